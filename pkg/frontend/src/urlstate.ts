/**
 * Search state lives in the URL query string so back/forward navigation
 * and link sharing just work. Only non-default fields are written.
 */

import { SearchFormState, emptyFormState } from "./compose.js";

export function encodeState(state: SearchFormState): string {
  const params = new URLSearchParams();
  if (state.rawQuery.trim()) params.set("q", state.rawQuery.trim());
  if (state.typeFilter) params.set("type", state.typeFilter);
  if (state.commitSha1?.trim()) params.set("sha", state.commitSha1.trim());
  if (state.repositoryUrl?.trim()) params.set("repo", state.repositoryUrl.trim());
  if (state.page > 0) params.set("page", String(state.page));
  const text = params.toString();
  return text ? `?${text}` : "";
}

export function decodeState(search: string): SearchFormState {
  const params = new URLSearchParams(search);
  const state = emptyFormState();
  state.rawQuery = params.get("q") ?? "";
  state.typeFilter = params.get("type") ?? undefined;
  state.commitSha1 = params.get("sha") ?? undefined;
  state.repositoryUrl = params.get("repo") ?? undefined;
  const page = Number.parseInt(params.get("page") ?? "0", 10);
  state.page = Number.isFinite(page) && page > 0 ? page : 0;
  return state;
}
