/**
 * Search form state and its pure mapping to a query string.
 *
 * The raw query and the typed filter fields combine by conjunction: the
 * raw query is parenthesized when any typed field joins it, and each
 * populated field contributes one equality clause. With nothing but the
 * raw query present, the composed query is the raw query unchanged.
 */

export interface SearchFormState {
  rawQuery: string;
  typeFilter?: string;
  commitSha1?: string;
  repositoryUrl?: string;
  page: number;
}

export const PAGE_SIZE = 20;

export function emptyFormState(): SearchFormState {
  return { rawQuery: "", page: 0 };
}

/** Characters a value may contain and still be written as a bare word. */
const BARE_WORD = /^[^\s()&|"=<>~!/][^\s()&|"=<>~!]*$/;

function quote(text: string): string {
  return '"' + text.replace(/\\/g, "\\\\").replace(/"/g, '\\"') + '"';
}

function literal(value: string): string {
  return BARE_WORD.test(value) ? value : quote(value);
}

export function composeQuery(state: SearchFormState): string {
  const clauses: string[] = [];
  const raw = state.rawQuery.trim();
  if (state.typeFilter) {
    clauses.push(`type = ${quote(state.typeFilter)}`);
  }
  if (state.commitSha1 && state.commitSha1.trim()) {
    clauses.push(`commit.sha1 = ${literal(state.commitSha1.trim())}`);
  }
  if (state.repositoryUrl && state.repositoryUrl.trim()) {
    clauses.push(`repository = ${literal(state.repositoryUrl.trim())}`);
  }
  if (raw === "") {
    return clauses.join(" & ");
  }
  if (clauses.length === 0) {
    return raw;
  }
  return [`(${raw})`, ...clauses].join(" & ");
}
