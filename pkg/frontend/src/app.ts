/**
 * Application shell: routing, state wiring, one in-flight search.
 *
 * Routes: `/` is the search page with its state in the URL query string;
 * `/case/{id}` is the detail page. New searches abort the previous
 * request, so a slow response can never overwrite a newer one.
 */

import { ApiClient, ApiError } from "./api.js";
import { PAGE_SIZE, SearchFormState, composeQuery } from "./compose.js";
import { decodeState, encodeState } from "./urlstate.js";
import {
  SearchViewRefs,
  buildSearchView,
  fillTypeOptions,
  renderDetail,
  renderNetworkError,
  renderNotFound,
  renderQueryError,
  renderResults,
} from "./views.js";

export class App {
  private refs: SearchViewRefs | null = null;
  private inFlight: AbortController | null = null;
  private typesLoaded = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient = new ApiClient(),
    private readonly navigate: (url: string) => void = (url) => history.pushState(null, "", url),
  ) {}

  start(): Promise<void> {
    window.addEventListener("popstate", () => {
      void this.route(location.pathname, location.search);
    });
    return this.route(location.pathname, location.search);
  }

  route(pathname: string, search: string): Promise<void> {
    const caseMatch = pathname.match(/^\/case\/(.+)$/);
    if (caseMatch?.[1]) {
      return this.showDetail(decodeURIComponent(caseMatch[1]));
    }
    return this.showSearch(decodeState(search));
  }

  /** Render the search page for a given form state and run its search. */
  async showSearch(state: SearchFormState): Promise<void> {
    const refs = this.ensureSearchView();
    refs.queryInput.value = state.rawQuery;
    refs.shaInput.value = state.commitSha1 ?? "";
    refs.repoInput.value = state.repositoryUrl ?? "";
    await this.loadTypes(refs, state.typeFilter);
    await this.runSearch(state);
  }

  private ensureSearchView(): SearchViewRefs {
    if (this.refs && this.root.contains(this.refs.root)) {
      return this.refs;
    }
    const refs = buildSearchView();
    this.refs = refs;
    this.root.replaceChildren(refs.root);

    refs.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitFromForm();
    });
    refs.typeSelect.addEventListener("change", () => {
      void this.submitFromForm();
    });
    refs.prevButton.addEventListener("click", () => {
      void this.turnPage(-1);
    });
    refs.nextButton.addEventListener("click", () => {
      void this.turnPage(1);
    });
    refs.results.addEventListener("click", (event) => {
      const anchor = (event.target as HTMLElement).closest("a.result-row");
      if (anchor instanceof HTMLAnchorElement) {
        event.preventDefault();
        const id = decodeURIComponent(anchor.pathname.replace(/^\/case\//, ""));
        this.navigate(anchor.pathname);
        void this.showDetail(id);
      }
    });
    return refs;
  }

  private formState(page = 0): SearchFormState {
    const refs = this.refs!;
    return {
      rawQuery: refs.queryInput.value,
      typeFilter: refs.typeSelect.value || undefined,
      commitSha1: refs.shaInput.value || undefined,
      repositoryUrl: refs.repoInput.value || undefined,
      page,
    };
  }

  async submitFromForm(): Promise<void> {
    const state = this.formState(0);
    this.navigate("/" + encodeState(state));
    await this.runSearch(state);
  }

  private currentState: SearchFormState = { rawQuery: "", page: 0 };

  private async turnPage(delta: number): Promise<void> {
    const state = { ...this.currentState, page: Math.max(0, this.currentState.page + delta) };
    this.navigate("/" + encodeState(state));
    await this.runSearch(state);
  }

  private async loadTypes(refs: SearchViewRefs, selected?: string): Promise<void> {
    if (this.typesLoaded) {
      refs.typeSelect.value = selected ?? "";
      return;
    }
    try {
      const types = await this.api.listTypes();
      fillTypeOptions(refs.typeSelect, types, selected);
      this.typesLoaded = true;
    } catch {
      // The dropdown stays empty; plain queries still work.
    }
  }

  async runSearch(state: SearchFormState): Promise<void> {
    const refs = this.ensureSearchView();
    this.currentState = state;
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;

    const q = composeQuery(state);
    refs.summary.textContent = "searching…";
    try {
      const page = await this.api.search(q, state.page * PAGE_SIZE, PAGE_SIZE, controller.signal);
      if (controller.signal.aborted) return;
      renderResults(refs, page);
    } catch (error) {
      if (controller.signal.aborted) return;
      if (error instanceof ApiError && error.code === "parse_error") {
        renderQueryError(refs, q, error.message, error.offset);
        return;
      }
      const message = error instanceof Error ? error.message : String(error);
      renderNetworkError(refs, message, () => {
        void this.runSearch(state);
      });
    }
  }

  async showDetail(id: string): Promise<void> {
    this.refs = null; // leaving the search page; rebuild it on return
    try {
      const doc = await this.api.getCase(id);
      renderDetail(this.root, doc);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        renderNotFound(this.root, id);
        return;
      }
      throw error;
    }
  }
}

export function bootstrap(): void {
  const root = document.getElementById("app");
  if (root) {
    void new App(root).start();
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  bootstrap();
}
