// JSON shapes of the gapnet HTTP API. The server is the source of truth;
// these types mirror its documented payloads field for field.

export type Pos = "noun" | "verb" | "adjective" | "adverb";

export type StateKind =
  | "generated"
  | "in-translation"
  | "submitted"
  | "peer-review"
  | "changes-requested"
  | "peer-accepted"
  | "expert-review"
  | "approved"
  | "expert-rejected"
  | "skipped";

export type LegalAction = "claim" | "contribution" | "peer-review" | "expert-review";

export interface TextDoc {
  text: string;
  language: string;
}

export interface PhrasetDoc {
  text: string;
  language: string;
  examples?: TextDoc[];
}

export interface SenseDoc {
  form: string;
  rank: number;
  provenance: string;
  examples: TextDoc[];
  deleted: { code: string; comment: string } | null;
}

export interface SynsetDoc {
  id: string;
  pos: Pos;
  pivot_ref: string | null;
  status: "lexicalized" | "gap" | "pending";
  approved: boolean;
  gloss: TextDoc | null;
  senses: SenseDoc[];
  phrasets: PhrasetDoc[];
}

export interface TaskStateDoc {
  kind: StateKind;
  actor: string | null;
  comment: string | null;
}

export interface TaskSummaryDoc {
  id: string;
  pos: Pos;
  state: TaskStateDoc;
  version: number;
  submitter: string | null;
  actions?: LegalAction[];
}

export interface TaskDetailDoc extends TaskSummaryDoc {
  pivot: SynsetDoc;
  v1: SynsetDoc;
  draft: SynsetDoc | null;
  contribution: ContributionDoc | null;
  submission: number | null;
  suggested_reviewer?: string | null;
}

export interface TaskListDoc {
  tasks: TaskSummaryDoc[];
  total: number;
}

export interface HealthDoc {
  status: string;
  language: string;
  tag: string;
  events: number;
  tasks: number;
}

// -- contributions -----------------------------------------------------------

export interface SenseDraftDoc {
  form: string;
  examples: TextDoc[];
}

export interface TranslateDoc {
  type: "translate";
  gloss: TextDoc;
  senses: SenseDraftDoc[];
  phrasets: PhrasetDoc[];
}

export interface MarkGapDoc {
  type: "mark-gap";
  phrasets: PhrasetDoc[];
  comment: string;
}

export interface MergeV1Doc {
  type: "merge-v1";
  add: SenseDraftDoc[];
  delete: { form: string; reason: { code: string; comment: string } }[];
  gloss: TextDoc | null;
  sense_examples: { form: string; examples: TextDoc[] }[];
  phrasets: PhrasetDoc[];
  copy_gloss: boolean;
  copy_examples: boolean;
}

export interface SkipDoc {
  type: "skip";
  comment: string;
}

export type ContributionDoc = TranslateDoc | MarkGapDoc | MergeV1Doc | SkipDoc;

// -- review decisions --------------------------------------------------------

export type Criterion = "gap" | "gloss" | "lemmas" | "examples";

export interface ChecklistDoc {
  gap: boolean;
  gloss: boolean;
  lemmas: boolean;
  examples: boolean;
}

export interface DecisionDoc {
  verdict: "accept" | "reject";
  checklist: ChecklistDoc;
  comment: string;
  counter_lemma: string | null;
}

// -- lookups and metrics -----------------------------------------------------

export interface SynsetLocationDoc {
  source: "target" | "v1" | "pivot";
  synset: SynsetDoc;
}

export interface LookupDoc {
  form: string;
  pos: Pos | null;
  target: SynsetDoc[];
  pivot: {
    pivot_id: string;
    pivot_gloss: string | null;
    target_id: string | null;
    status: string | null;
    lemmas: string[];
    phrasets: string[];
    gap: boolean;
  }[];
}

export type PosRow = Record<Pos | "total", number>;

export interface ContributionStatsDoc {
  scope: "approved" | "all";
  rows: Record<string, PosRow>;
}

export interface CorrectnessDoc {
  categories: Record<string, { correct: number; total: number; ratio: number | null }>;
  overall: { correct: number; total: number; ratio: number | null };
  undecided: number;
}

export interface CompletenessDoc {
  findings: { kind: string; synset: string; detail: string }[];
  total: number;
}

export interface ErrorDoc {
  error: { code: string; message: string; field?: string | null };
}
