/** DOM builders for the search and detail pages. No framework, no state. */

import { CaseDoc, SearchPage, TypeCount } from "./api.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export interface SearchViewRefs {
  root: HTMLElement;
  form: HTMLFormElement;
  queryInput: HTMLInputElement;
  typeSelect: HTMLSelectElement;
  shaInput: HTMLInputElement;
  repoInput: HTMLInputElement;
  errorBox: HTMLElement;
  summary: HTMLElement;
  results: HTMLElement;
  prevButton: HTMLButtonElement;
  nextButton: HTMLButtonElement;
  pageLabel: HTMLElement;
}

export function buildSearchView(): SearchViewRefs {
  const root = el("div", { class: "search-page" });
  const heading = el("h1", {}, "refsearch");
  heading.appendChild(el("span", { class: "tagline" }, " search engine for refactoring cases"));

  const form = el("form", { class: "search-form" });
  const queryInput = el("input", {
    type: "text",
    name: "q",
    class: "query-input",
    placeholder: 'query, e.g. type = "Extract Method" & extractMethod.extractedLines >= 10',
    "aria-label": "query",
  });
  const submit = el("button", { type: "submit" }, "Search");
  const queryRow = el("div", { class: "query-row" });
  queryRow.append(queryInput, submit);

  const typeSelect = el("select", { name: "type", "aria-label": "refactoring type" });
  typeSelect.appendChild(el("option", { value: "" }, "any type"));
  const shaInput = el("input", {
    type: "text",
    name: "sha",
    placeholder: "commit hash",
    "aria-label": "commit hash",
  });
  const repoInput = el("input", {
    type: "text",
    name: "repo",
    placeholder: "repository URL",
    "aria-label": "repository URL",
  });
  const filterRow = el("div", { class: "filter-row" });
  filterRow.append(
    el("label", {}, "type "),
    typeSelect,
    el("label", {}, "commit "),
    shaInput,
    el("label", {}, "repository "),
    repoInput,
  );

  const errorBox = el("div", { class: "query-error", hidden: "" });
  const summary = el("div", { class: "summary" });
  const results = el("div", { class: "results" });

  const prevButton = el("button", { type: "button", class: "page-prev" }, "← previous");
  const nextButton = el("button", { type: "button", class: "page-next" }, "next →");
  const pageLabel = el("span", { class: "page-label" });
  const pager = el("div", { class: "pager" });
  pager.append(prevButton, pageLabel, nextButton);

  form.append(queryRow, filterRow);
  root.append(heading, form, errorBox, summary, results, pager);
  return {
    root,
    form,
    queryInput,
    typeSelect,
    shaInput,
    repoInput,
    errorBox,
    summary,
    results,
    prevButton,
    nextButton,
    pageLabel,
  };
}

export function fillTypeOptions(select: HTMLSelectElement, types: TypeCount[], selected?: string): void {
  while (select.options.length > 1) {
    select.remove(1);
  }
  for (const entry of types) {
    const option = el("option", { value: entry.type }, `${entry.type} (${entry.count})`);
    select.appendChild(option);
  }
  select.value = selected ?? "";
}

function repoName(url: string | undefined): string {
  if (!url) return "";
  const parts = url.replace(/\/+$/, "").split("/");
  return parts.slice(-2).join("/") || url;
}

export function renderResults(refs: SearchViewRefs, page: SearchPage): void {
  refs.errorBox.hidden = true;
  refs.results.replaceChildren();
  refs.summary.textContent =
    page.total === 0
      ? "no matching refactoring cases"
      : `${page.total} matching case${page.total === 1 ? "" : "s"}`;

  for (const doc of page.items) {
    refs.results.appendChild(resultRow(doc));
  }

  const pageIndex = Math.floor(page.offset / page.limit);
  const pageCount = Math.max(1, Math.ceil(page.total / page.limit));
  refs.pageLabel.textContent = `page ${pageIndex + 1} of ${pageCount}`;
  refs.prevButton.disabled = pageIndex <= 0;
  refs.nextButton.disabled = pageIndex + 1 >= pageCount;
}

function resultRow(doc: CaseDoc): HTMLElement {
  const row = el("a", { class: "result-row", href: `/case/${encodeURIComponent(doc.id)}` });
  const head = el("div", { class: "result-head" });
  head.append(
    el("span", { class: "repo" }, repoName(doc.repository)),
    el("span", { class: "tool-badge" }, doc.meta?.tool ?? "?"),
    el("span", { class: "type" }, doc.type ?? ""),
  );
  const description = el("div", { class: "description" }, doc.description ?? "");
  row.append(head, description);
  return row;
}

/** Inline parse-error annotation with a caret at the reported offset. */
export function renderQueryError(
  refs: SearchViewRefs,
  query: string,
  message: string,
  offset?: number,
): void {
  refs.errorBox.hidden = false;
  refs.errorBox.replaceChildren();
  refs.errorBox.appendChild(el("div", { class: "error-message" }, `query error: ${message}`));
  if (offset !== undefined) {
    const bytes = new TextEncoder().encode(query);
    const caretColumn = new TextDecoder().decode(bytes.slice(0, offset)).length;
    const pre = el("pre", { class: "error-caret" });
    pre.textContent = `${query}\n${" ".repeat(caretColumn)}^`;
    refs.errorBox.appendChild(pre);
  }
  refs.summary.textContent = "";
  refs.results.replaceChildren();
  refs.pageLabel.textContent = "";
}

export function renderNetworkError(refs: SearchViewRefs, message: string, retry: () => void): void {
  refs.errorBox.hidden = false;
  refs.errorBox.replaceChildren();
  refs.errorBox.appendChild(el("div", { class: "error-message" }, `search failed: ${message}`));
  const button = el("button", { type: "button" }, "retry");
  button.addEventListener("click", retry);
  refs.errorBox.appendChild(button);
}

export function renderDetail(root: HTMLElement, doc: CaseDoc): void {
  root.replaceChildren();
  const page = el("div", { class: "detail-page" });
  const back = el("a", { href: "/", class: "back-link" }, "← back to search");

  const header = el("div", { class: "detail-header" });
  header.appendChild(el("h1", {}, doc.type ?? "refactoring case"));
  const facts = el("dl", { class: "facts" });
  const addFact = (label: string, value: Node | string) => {
    facts.appendChild(el("dt", {}, label));
    const dd = el("dd", {});
    if (typeof value === "string") {
      dd.textContent = value;
    } else {
      dd.appendChild(value);
    }
    facts.appendChild(dd);
  };
  addFact("repository", doc.repository ?? "");
  const sha = doc.commit?.sha1 ?? "";
  if (doc.commitUrl) {
    addFact("commit", el("a", { href: doc.commitUrl, class: "commit-link" }, sha));
  } else {
    addFact("commit", sha);
  }
  addFact("detector", doc.meta?.tool ?? "");
  addFact("description", doc.description ?? "");
  header.appendChild(facts);

  const rawHeading = el("h2", {}, "raw data");
  const raw = el("pre", { class: "raw-json" });
  const clean = { ...doc };
  delete clean.commitUrl; // presentation convenience, not part of the case
  raw.textContent = JSON.stringify(clean, null, 2);

  page.append(back, header, rawHeading, raw);
  root.appendChild(page);
}

export function renderNotFound(root: HTMLElement, id: string): void {
  root.replaceChildren();
  const page = el("div", { class: "detail-page" });
  page.append(
    el("a", { href: "/", class: "back-link" }, "← back to search"),
    el("h1", {}, "case not found"),
    el("p", {}, `No refactoring case with id ${id}.`),
  );
  root.appendChild(page);
}
