import { beforeEach, describe, expect, it } from "vitest";

import { initApp, type AppHandle } from "../src/main.js";
import { StubApi } from "./stub.js";

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

function mount(): HTMLElement {
  document.body.innerHTML = '<div id="app"></div>';
  return document.getElementById("app") as HTMLElement;
}

function find<E extends HTMLElement>(root: HTMLElement, id: string): E {
  const node = root.querySelector<E>(`[data-testid="${id}"]`);
  if (!node) throw new Error(`missing element ${id}`);
  return node;
}

function textOf(root: HTMLElement, id: string): string {
  return find(root, id).textContent ?? "";
}

function isHidden(root: HTMLElement, id: string): boolean {
  return find(root, id).classList.contains("hidden");
}

function addLanguage(root: HTMLElement, name: string): void {
  find<HTMLSelectElement>(root, "picker").value = name;
  find<HTMLButtonElement>(root, "add").click();
}

function setSlider(root: HTMLElement, name: string, pct: number): void {
  const slider = root.querySelector<HTMLInputElement>(
    `[data-lang="${name}"] input[type="range"]`,
  );
  if (!slider) throw new Error(`no slider for ${name}`);
  slider.value = String(pct);
  slider.dispatchEvent(new Event("input"));
}

function suggestionButtons(root: HTMLElement): HTMLButtonElement[] {
  return [...find(root, "suggestions").querySelectorAll<HTMLButtonElement>("button")];
}

describe("app", () => {
  let root: HTMLElement;
  let stub: StubApi;
  let app: AppHandle;

  async function boot(api = new StubApi()): Promise<void> {
    root = mount();
    stub = api;
    app = await initApp(root, stub, { debounceMs: 1 });
    await app.idle();
  }

  beforeEach(async () => {
    await boot();
  });

  it("asks the service to score even the empty portfolio", () => {
    expect(stub.lqCount).toBe(1);
    expect(stub.lastLq?.languages).toEqual({});
    expect(textOf(root, "score")).toBe("0.0000");
    // nothing to rank yet, and no /suggest call was wasted on it
    expect(stub.suggestCount).toBe(0);
    expect(isHidden(root, "whatif-hint")).toBe(false);
    expect(textOf(root, "whatif-hint")).toContain("Add a language");
    // the picker was filled from the taxonomy
    const picker = find<HTMLSelectElement>(root, "picker");
    expect(picker.options.length).toBe(5);
  });

  it("adding a language triggers a refresh with the new entry", async () => {
    addLanguage(root, "English");
    await app.idle();
    expect(stub.lastLq?.languages).toEqual({ English: 1 });
    expect(textOf(root, "score")).toBe("1.0000");
    const row = root.querySelector<HTMLElement>('[data-lang="English"]');
    expect(row).not.toBeNull();
    expect(row?.querySelector("input")?.value).toBe("100");
    // suggestions now exist and exclude what is already selected
    const names = suggestionButtons(root).map((b) => b.dataset.lang);
    expect(names).not.toContain("English");
    expect(names.length).toBeGreaterThan(0);
    expect(stub.lastSuggest?.topK).toBe(5);
    expect(isHidden(root, "whatif-hint")).toBe(true);
  });

  it("keeps at most one request in flight during rapid slider movement", async () => {
    addLanguage(root, "English");
    await app.idle();
    const before = stub.lqCount;
    stub.lqDelayMs = 40;

    setSlider(root, "English", 30);
    await sleep(10); // debounce fires; first refresh is now in flight
    setSlider(root, "English", 40);
    setSlider(root, "English", 50);
    setSlider(root, "English", 60);
    await app.idle();

    expect(stub.maxInFlightLq).toBe(1);
    // burst collapsed: one refresh for 30, one for the final 60
    expect(stub.lqCount - before).toBe(2);
    expect(stub.lastLq?.languages).toEqual({ English: 0.6 });
    expect(textOf(root, "score")).toBe("0.6000");
    expect(root.querySelector('[data-lang="English"] .row-pct')?.textContent).toBe("60%");
  });

  it("re-renders a strictly higher score when a slider goes up", async () => {
    addLanguage(root, "English");
    await app.idle();
    setSlider(root, "English", 50);
    await app.idle();
    const at50 = parseFloat(textOf(root, "score"));
    expect(textOf(root, "score")).toBe("0.5000");
    setSlider(root, "English", 100);
    await app.idle();
    const at100 = parseFloat(textOf(root, "score"));
    expect(at100).toBeGreaterThan(at50);
  });

  it("a suggestion click adds the language and refreshes in one round trip", async () => {
    addLanguage(root, "Serbian");
    await app.idle();
    const before = stub.lqCount;

    const top = suggestionButtons(root)[0];
    expect(top?.dataset.lang).toBe("Chinese");
    expect(top?.querySelector(".suggestion-gain")?.textContent).toBe("+1.0000");
    top?.click();
    await app.idle();

    expect(stub.lqCount - before).toBe(1);
    expect(stub.lastLq?.languages).toEqual({ Chinese: 1, Serbian: 1 });
    expect(textOf(root, "score")).toBe("2.0000");
    expect(root.querySelector('[data-lang="Chinese"]')).not.toBeNull();
    expect(suggestionButtons(root).map((b) => b.dataset.lang)).not.toContain("Chinese");
  });

  it("clearing empties the portfolio and shows the service's zero", async () => {
    addLanguage(root, "Serbian");
    addLanguage(root, "Chinese");
    await app.idle();
    const before = stub.lqCount;
    find<HTMLButtonElement>(root, "clear").click();
    await app.idle();
    expect(stub.lqCount).toBeGreaterThan(before);
    expect(stub.lastLq?.languages).toEqual({});
    expect(textOf(root, "score")).toBe("0.0000");
    expect(find(root, "rows").children.length).toBe(0);
    expect(isHidden(root, "whatif-hint")).toBe(false);
  });

  it("the top-k control limits the suggestion list", async () => {
    addLanguage(root, "Serbian");
    await app.idle();
    const topk = find<HTMLInputElement>(root, "topk");
    topk.value = "1";
    topk.dispatchEvent(new Event("change"));
    await app.idle();
    const rows = suggestionButtons(root);
    expect(rows.length).toBe(1);
    expect(rows[0]?.dataset.lang).toBe("Chinese");
  });

  it("explains the empty panel when every language is already selected", async () => {
    for (const name of ["Chinese", "Croatian", "English", "Serbian", "Slovene"]) {
      addLanguage(root, name);
    }
    await app.idle();
    expect(suggestionButtons(root).length).toBe(0);
    expect(isHidden(root, "whatif-hint")).toBe(false);
    expect(textOf(root, "whatif-hint")).toContain("already in the portfolio");
  });

  it("sends the chosen aggregation policy with every request", async () => {
    addLanguage(root, "Serbian");
    await app.idle();
    const policy = find<HTMLSelectElement>(root, "policy");
    policy.value = "identity";
    policy.dispatchEvent(new Event("change"));
    await app.idle();
    expect(stub.lastLq?.policy).toBe("identity");
    expect(stub.lastSuggest?.policy).toBe("identity");
    expect(textOf(root, "score-note")).toBe("aggregation: identity");
  });

  it("shows coded rejections inline and recovers on the next success", async () => {
    stub.failNextLq("policy_invalid", "unknown policy 'cubic'");
    const policy = find<HTMLSelectElement>(root, "policy");
    policy.value = "pow:2";
    policy.dispatchEvent(new Event("change"));
    await app.idle();
    expect(isHidden(root, "error")).toBe(false);
    expect(textOf(root, "error")).toContain("cubic");
    expect(isHidden(root, "banner")).toBe(true);

    policy.value = "sqrt";
    policy.dispatchEvent(new Event("change"));
    await app.idle();
    expect(isHidden(root, "error")).toBe(true);
  });

  it("shows a banner while unreachable but keeps the editor alive", async () => {
    const offline = new StubApi();
    offline.offline = true;
    await boot(offline);

    expect(isHidden(root, "banner")).toBe(false);
    expect(textOf(root, "banner")).toContain("unreachable");
    expect(textOf(root, "score")).toBe("·");
    // no taxonomy yet, so the picker is empty, but state edits still work
    expect(find<HTMLSelectElement>(root, "picker").options.length).toBe(0);
    app.portfolio.add("English", 0.5);
    expect(app.portfolio.weight("English")).toBe(0.5);

    // service comes back; the next refresh clears the banner and backfills
    offline.offline = false;
    app.recomputeNow();
    await app.idle();
    await sleep(20); // the deferred taxonomy reload is not queue-tracked
    expect(isHidden(root, "banner")).toBe(true);
    expect(textOf(root, "score")).toBe("0.5000");
    expect(find<HTMLSelectElement>(root, "picker").options.length).toBe(5);
  });
});
