// Read-only cards for synsets and submitted contributions. The editor and
// both review forms render next to these, so they live in one place.

import { arabic, el } from "../dom.js";
import type { ContributionDoc, SenseDoc, StateKind, SynsetDoc } from "../types.js";

const STATE_LABELS: Record<StateKind, string> = {
  generated: "new",
  "in-translation": "in translation",
  submitted: "submitted",
  "peer-review": "in peer review",
  "changes-requested": "returned",
  "peer-accepted": "peer accepted",
  "expert-review": "in expert review",
  approved: "approved",
  "expert-rejected": "rejected",
  skipped: "skipped",
};

export function stateBadge(kind: StateKind): HTMLElement {
  return el("span", { class: `badge badge-${kind}`, text: STATE_LABELS[kind] ?? kind });
}

function senseLine(sense: SenseDoc): HTMLElement {
  const li = el("li", { class: sense.deleted ? "sense deleted" : "sense" });
  li.append(el("span", { class: "rank", text: String(sense.rank) }));
  li.append(arabic(el("span", { class: "form", text: sense.form })));
  if (sense.deleted) {
    li.append(el("span", { class: "deletion", text: `deleted: ${sense.deleted.code}` }));
  }
  for (const example of sense.examples) {
    li.append(arabic(el("div", { class: "example", text: example.text })));
  }
  return li;
}

export function synsetCard(title: string, synset: SynsetDoc | null): HTMLElement {
  const card = el("section", { class: "card synset-card" }, el("h3", { text: title }));
  if (!synset) {
    card.append(el("p", { class: "empty", text: "none" }));
    return card;
  }
  card.append(
    el("div", { class: "meta", text: `${synset.id} · ${synset.pos} · ${synset.status}` })
  );
  if (synset.gloss) {
    const gloss = el("p", { class: "gloss", text: synset.gloss.text });
    if (synset.gloss.language === "ar") arabic(gloss);
    card.append(gloss);
  }
  if (synset.senses.length) {
    const list = el("ul", { class: "senses" });
    for (const sense of synset.senses) list.append(senseLine(sense));
    card.append(list);
  }
  if (synset.phrasets.length) {
    const list = el("ul", { class: "phrasets" });
    for (const p of synset.phrasets) list.append(arabic(el("li", { text: p.text })));
    card.append(el("h4", { text: "phrasets" }), list);
  }
  return card;
}

export function contributionCard(contribution: ContributionDoc | null): HTMLElement {
  const card = el("section", { class: "card contribution-card" }, el("h3", { text: "submission" }));
  if (!contribution) {
    card.append(el("p", { class: "empty", text: "none" }));
    return card;
  }
  card.append(el("div", { class: "meta", text: contribution.type }));
  if (contribution.type === "skip") {
    card.append(el("p", { text: contribution.comment }));
    return card;
  }
  if (contribution.type === "mark-gap") {
    const list = el("ul", { class: "phrasets" });
    for (const p of contribution.phrasets) list.append(arabic(el("li", { text: p.text })));
    card.append(list);
    if (contribution.comment) card.append(el("p", { text: contribution.comment }));
    return card;
  }
  if (contribution.type === "translate") {
    card.append(arabic(el("p", { class: "gloss", text: contribution.gloss.text })));
    const list = el("ul", { class: "senses" });
    contribution.senses.forEach((sense, i) => {
      const li = el("li", {}, el("span", { class: "rank", text: String(i + 1) }));
      li.append(arabic(el("span", { class: "form", text: sense.form })));
      for (const example of sense.examples) {
        li.append(arabic(el("div", { class: "example", text: example.text })));
      }
      list.append(li);
    });
    card.append(list);
    if (contribution.phrasets.length) {
      const ps = el("ul", { class: "phrasets" });
      for (const p of contribution.phrasets) ps.append(arabic(el("li", { text: p.text })));
      card.append(el("h4", { text: "phrasets" }), ps);
    }
    return card;
  }
  // merge-v1: summarize the curation rather than reproduce the whole form
  const parts: string[] = [];
  if (contribution.add.length) parts.push(`${contribution.add.length} added`);
  if (contribution.delete.length) parts.push(`${contribution.delete.length} deleted`);
  if (contribution.gloss) parts.push("gloss replaced");
  if (contribution.phrasets.length) parts.push(`${contribution.phrasets.length} phrasets`);
  card.append(el("p", { text: parts.length ? parts.join(", ") : "kept as inherited" }));
  return card;
}
