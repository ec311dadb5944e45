/** Small DOM widgets: debounced search autocomplete and the alpha controls. */

import { ALPHA_PRESETS } from "./layout.js";

export function debounce<A extends unknown[]>(fn: (...args: A) => void, ms: number) {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    clearTimeout(timer);
    timer = setTimeout(() => fn(...args), ms);
  };
}

/** Wire an as-you-type autocomplete list under a text input. */
export function attachSearchBox(
  input: HTMLInputElement,
  list: HTMLElement,
  lookup: (query: string) => Promise<string[]>,
  onPick: (name: string, query: string) => void,
): void {
  const refresh = debounce(async () => {
    const query = input.value;
    if (!query) {
      list.replaceChildren();
      return;
    }
    let matches: string[];
    try {
      matches = await lookup(query);
    } catch {
      return;
    }
    if (input.value !== query) {
      return; // superseded while waiting
    }
    list.replaceChildren(
      ...matches.map((name) => {
        const item = document.createElement("li");
        item.textContent = name;
        item.addEventListener("click", () => {
          input.value = name;
          list.replaceChildren();
          onPick(name, query);
        });
        return item;
      }),
    );
  }, 150);
  input.addEventListener("input", refresh);
}

/** Preset buttons, a log-scale slider, and an exact-value text input that all
 * drive the same significance level. */
export function attachAlphaControls(
  container: HTMLElement,
  slider: HTMLInputElement,
  exact: HTMLInputElement,
  onAlpha: (alpha: number) => void,
): void {
  for (const preset of ALPHA_PRESETS) {
    const button = document.createElement("button");
    button.type = "button";
    button.textContent = String(preset);
    button.addEventListener("click", () => {
      exact.value = String(preset);
      slider.value = String(Math.log10(preset));
      onAlpha(preset);
    });
    container.appendChild(button);
  }
  slider.min = "-6";
  slider.max = "0";
  slider.step = "0.05";
  slider.addEventListener("change", () => {
    const alpha = Math.min(1, 10 ** Number(slider.value));
    exact.value = alpha.toPrecision(3);
    onAlpha(alpha);
  });
  exact.addEventListener("change", () => {
    const alpha = Number(exact.value);
    if (Number.isFinite(alpha) && alpha > 0 && alpha <= 1) {
      slider.value = String(Math.log10(alpha));
      onAlpha(alpha);
    }
  });
}

/** Offer a blob as a browser download. */
export function downloadBlob(blob: Blob, filename: string): void {
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  setTimeout(() => URL.revokeObjectURL(url), 1000);
}
