import {
  ApiRequestError,
  ServiceUnreachableError,
  type LanguageEntry,
  type LqResponse,
  type ScoringApi,
  type Suggestion,
  type TaxonomyDoc,
} from "./api.js";
import { debounce, RecomputeQueue } from "./recompute.js";
import { SessionPortfolio } from "./state.js";
import { renderTree } from "./tree.js";

export interface AppOptions {
  /** Delay before a slider edit triggers a refresh. Tests shrink this. */
  debounceMs?: number;
}

export interface AppHandle {
  portfolio: SessionPortfolio;
  /** Force an immediate refresh, skipping the debounce. */
  recomputeNow(): void;
  /** Resolves once no refresh is pending or in flight. */
  idle(): Promise<void>;
}

interface RefreshResult {
  lq: LqResponse;
  // null when the portfolio was empty at submit time (no /suggest call made)
  suggestions: Suggestion[] | null;
}

const TEMPLATE = `
<div class="banner hidden" data-testid="banner"></div>
<header class="topbar">
  <h1>Effective languages</h1>
  <label class="policy-label">aggregation
    <select data-testid="policy">
      <option value="sqrt" selected>sqrt</option>
      <option value="identity">identity</option>
      <option value="pow:0.5">pow:0.5</option>
      <option value="pow:2">pow:2</option>
    </select>
  </label>
</header>
<main class="columns">
  <section class="panel">
    <h2>Portfolio</h2>
    <div class="adder">
      <select data-testid="picker"></select>
      <button data-testid="add">add</button>
      <button data-testid="clear">clear</button>
    </div>
    <div class="error hidden" data-testid="error"></div>
    <ul class="rows" data-testid="rows"></ul>
  </section>
  <section class="panel">
    <h2>Score</h2>
    <div class="score" data-testid="score">·</div>
    <div class="score-note" data-testid="score-note"></div>
    <div class="tree" data-testid="tree"></div>
  </section>
  <section class="panel">
    <h2>What to learn next</h2>
    <p class="fineprint">ranked by effective languages gained</p>
    <label class="topk-label">show top
      <input type="number" min="1" step="1" value="5" data-testid="topk">
    </label>
    <ul class="suggestions" data-testid="suggestions"></ul>
    <p class="hint hidden" data-testid="whatif-hint"></p>
  </section>
</main>
`;

export async function initApp(
  root: HTMLElement,
  api: ScoringApi,
  options: AppOptions = {},
): Promise<AppHandle> {
  const debounceMs = options.debounceMs ?? 150;
  root.innerHTML = TEMPLATE;

  const q = <E extends HTMLElement>(id: string): E => {
    const node = root.querySelector<E>(`[data-testid="${id}"]`);
    if (!node) throw new Error(`template is missing element ${id}`);
    return node;
  };
  const el = {
    banner: q<HTMLDivElement>("banner"),
    policy: q<HTMLSelectElement>("policy"),
    picker: q<HTMLSelectElement>("picker"),
    add: q<HTMLButtonElement>("add"),
    clear: q<HTMLButtonElement>("clear"),
    error: q<HTMLDivElement>("error"),
    rows: q<HTMLUListElement>("rows"),
    score: q<HTMLDivElement>("score"),
    scoreNote: q<HTMLDivElement>("score-note"),
    tree: q<HTMLDivElement>("tree"),
    topk: q<HTMLInputElement>("topk"),
    suggestions: q<HTMLUListElement>("suggestions"),
    whatifHint: q<HTMLParagraphElement>("whatif-hint"),
  };

  const portfolio = new SessionPortfolio();
  let taxonomy: TaxonomyDoc | null = null;

  function showBanner(message: string): void {
    el.banner.textContent = message;
    el.banner.classList.remove("hidden");
  }

  function showError(message: string): void {
    el.error.textContent = message;
    el.error.classList.remove("hidden");
  }

  function clearNotices(): void {
    el.banner.classList.add("hidden");
    el.error.classList.add("hidden");
  }

  function populatePicker(entries: LanguageEntry[]): void {
    el.picker.textContent = "";
    for (const entry of entries) {
      const option = document.createElement("option");
      option.value = entry.name;
      option.textContent = entry.name;
      option.title = entry.path.join(" / ");
      el.picker.appendChild(option);
    }
  }

  async function loadStaticData(): Promise<boolean> {
    try {
      taxonomy = await api.taxonomy();
      const entries = await api.languages();
      portfolio.setKnownLanguages(entries.map((entry) => entry.name));
      populatePicker(entries);
      return true;
    } catch (error) {
      handleFailure(error);
      return false;
    }
  }

  function handleFailure(error: unknown): void {
    if (error instanceof ServiceUnreachableError) {
      showBanner("Scoring service unreachable. Edits are kept; the score will refresh once it is back.");
    } else if (error instanceof ApiRequestError) {
      showError(error.message);
    } else {
      showError(String(error));
    }
  }

  function renderSuggestions(suggestions: Suggestion[] | null): void {
    el.suggestions.textContent = "";
    if (suggestions === null) {
      el.whatifHint.textContent = "Add a language to see what would help next.";
      el.whatifHint.classList.remove("hidden");
      return;
    }
    if (suggestions.length === 0) {
      el.whatifHint.textContent = "Every language in the taxonomy is already in the portfolio.";
      el.whatifHint.classList.remove("hidden");
      return;
    }
    el.whatifHint.classList.add("hidden");
    for (const suggestion of suggestions) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.className = "suggestion";
      button.dataset.lang = suggestion.language;
      const name = document.createElement("span");
      name.className = "suggestion-name";
      name.textContent = suggestion.language;
      const gain = document.createElement("span");
      gain.className = "suggestion-gain";
      gain.textContent = `+${suggestion.gain.toFixed(4)}`;
      button.append(name, gain);
      button.addEventListener("click", () => {
        portfolio.add(suggestion.language, 1.0);
        renderRows();
        recomputeNow();
      });
      item.appendChild(button);
      el.suggestions.appendChild(item);
    }
  }

  function applyResult(result: RefreshResult): void {
    portfolio.lastScore = result.lq.score;
    portfolio.lastBreakdown = result.lq.breakdown;
    el.score.textContent = result.lq.score.toFixed(4);
    el.scoreNote.textContent = `aggregation: ${result.lq.policy}`;
    if (taxonomy) {
      renderTree(el.tree, taxonomy, result.lq.breakdown);
    } else {
      // the first load failed earlier; try again now that the service answers
      void loadStaticData().then((ok) => {
        if (ok && taxonomy) renderTree(el.tree, taxonomy, portfolio.lastBreakdown);
      });
    }
    renderSuggestions(result.suggestions);
    clearNotices();
  }

  const queue = new RecomputeQueue<RefreshResult>(applyResult, handleFailure);

  function snapshotTask(): () => Promise<RefreshResult> {
    const languages = portfolio.languages();
    const policy = portfolio.policy;
    const empty = portfolio.isEmpty();
    const topK = Math.max(1, Number(el.topk.value) || 1);
    return async () => {
      const lq = await api.lq(languages, policy);
      const suggestions = empty ? null : await api.suggest(languages, topK, policy);
      return { lq, suggestions };
    };
  }

  function recomputeNow(): void {
    queue.submit(snapshotTask());
  }
  const recomputeSoon = debounce(recomputeNow, debounceMs);

  function renderRows(): void {
    el.rows.textContent = "";
    for (const [name, weight] of Object.entries(portfolio.languages())) {
      const row = document.createElement("li");
      row.className = "row";
      row.dataset.lang = name;

      const label = document.createElement("span");
      label.className = "row-name";
      label.textContent = name;

      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = "0";
      slider.max = "100";
      slider.step = "1";
      slider.value = String(Math.round(weight * 100));
      slider.setAttribute("aria-label", `${name} proficiency`);

      const pct = document.createElement("span");
      pct.className = "row-pct";
      pct.textContent = `${Math.round(weight * 100)}%`;

      slider.addEventListener("input", () => {
        const value = Number(slider.value);
        portfolio.setWeight(name, value / 100);
        pct.textContent = `${value}%`;
        recomputeSoon();
      });

      const remove = document.createElement("button");
      remove.className = "row-remove";
      remove.textContent = "remove";
      remove.setAttribute("aria-label", `remove ${name}`);
      remove.addEventListener("click", () => {
        portfolio.remove(name);
        renderRows();
        recomputeNow();
      });

      row.append(label, slider, pct, remove);
      el.rows.appendChild(row);
    }
  }

  el.add.addEventListener("click", () => {
    const name = el.picker.value;
    if (!name) return;
    try {
      portfolio.add(name, 1.0);
    } catch (error) {
      showError(String(error));
      return;
    }
    renderRows();
    recomputeNow();
  });

  el.clear.addEventListener("click", () => {
    portfolio.clear();
    renderRows();
    recomputeNow();
  });

  el.policy.addEventListener("change", () => {
    portfolio.policy = el.policy.value;
    recomputeNow();
  });

  el.topk.addEventListener("change", () => {
    recomputeNow();
  });

  await loadStaticData();
  renderRows();
  // the empty portfolio is scored by the service too; 0 comes from the wire
  recomputeNow();

  async function idle(): Promise<void> {
    do {
      await new Promise((resolve) => setTimeout(resolve, debounceMs + 1));
      await queue.settled();
    } while (queue.busy);
  }

  return { portfolio, recomputeNow, idle };
}
