// Tiny DOM construction helpers; the workbench renders without a framework.

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | boolean | EventListener> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      node.addEventListener(key.replace(/^on/, ""), value);
    } else if (typeof value === "boolean") {
      if (value) node.setAttribute(key, "");
      else node.removeAttribute(key);
      if (key === "disabled" || key === "checked") {
        (node as unknown as Record<string, boolean>)[key] = value;
      }
    } else if (key === "text") {
      node.textContent = value;
    } else {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    if (child == null) continue;
    node.append(child);
  }
  return node;
}

/** Arabic text field: right-to-left and language-tagged for the browser. */
export function arabic<K extends keyof HTMLElementTagNameMap>(node: HTMLElementTagNameMap[K]) {
  node.setAttribute("dir", "rtl");
  node.setAttribute("lang", "ar");
  return node;
}

export function clear(node: HTMLElement): HTMLElement {
  node.replaceChildren();
  return node;
}
