import { describe, expect, it } from "vitest";

import { emptyFormState } from "../src/compose.js";
import { decodeState, encodeState } from "../src/urlstate.js";

describe("URL state", () => {
  it("round-trips a full form state", () => {
    const state = {
      rawQuery: 'type = "Extract Method" & x >= 2',
      typeFilter: "Extract Method",
      commitSha1: "e35b0a8c39182fdfbd11164eee028099657c0393",
      repositoryUrl: "https://github.com/gradle/gradle",
      page: 3,
    };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it("omits defaults from the query string", () => {
    expect(encodeState(emptyFormState())).toBe("");
    const state = emptyFormState();
    state.rawQuery = "a = 1";
    expect(encodeState(state)).toBe("?q=a+%3D+1");
  });

  it("decodes an empty or junk page number to zero", () => {
    expect(decodeState("?q=a+%3D+1").page).toBe(0);
    expect(decodeState("?page=-4").page).toBe(0);
    expect(decodeState("?page=abc").page).toBe(0);
  });

  it("keeps regex queries intact through encoding", () => {
    const state = emptyFormState();
    state.rawQuery = "rename.from ~ /^get/i & rename.to ~ /^retrieve/i";
    expect(decodeState(encodeState(state)).rawQuery).toBe(state.rawQuery);
  });
});
