/** Wire types for the ontotag JSON API. Field names mirror the server. */

export interface EmotionTuple {
  val: number;
  ar: number;
  dom: number;
}

export interface Rating {
  annotator: string;
  weight: number;
  at: number;
}

export interface TagSummary {
  lemma: string;
  pos: string;
  offset: number;
  mean_weight: number;
  rater_count: number;
  ratings?: Rating[];
}

export interface ImageRecord {
  id: string;
  uri: string;
  keyword: string | null;
  emotion: EmotionTuple | null;
  tags: TagSummary[];
  committed: boolean;
}

export interface SenseRef {
  lemma: string;
  pos: string;
  offset: number;
}

export interface SenseOption extends SenseRef {
  gloss: string;
  synonyms: string[];
  stemmed: boolean;
}

export interface MatchDetail {
  query_sense: SenseRef;
  image_sense: SenseRef;
  mean_weight: number;
  similarity: number;
  contribution: number;
}

export interface RankedResult {
  image_id: string;
  raw_score: number;
  relevance: number;
  matches: MatchDetail[];
}

export interface CorpusStats {
  empty: boolean;
  image_count: number;
  tag_count_median: number;
  tag_count_mean: number;
  tag_count_sd: number;
  tag_count_min: number;
  tag_count_max: number;
  distinct_synset_count: number;
}

export interface TagAgreement {
  image_id: string;
  lemma: string;
  pos: string;
  offset: number;
  rater_count: number;
  kappa: number;
  inadequate: boolean;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  found?: number;
}

export interface SearchFilters {
  val?: [number, number];
  ar?: [number, number];
  dom?: [number, number];
  keyword?: string;
  maxd?: number;
}

export interface AnnotationPayload {
  lemma: string;
  pos: string;
  offset: number;
  weight: number;
  annotator: string;
}
