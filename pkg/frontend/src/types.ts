/** Payload shapes served by the explorer API; the UI never derives its own. */

export type TrieKey = number | '_leaf';

export interface SectorDoc {
  node_path: TrieKey[];
  ring: number;
  start_angle: number;
  end_angle: number;
  kind: 'condition' | 'leaf';
  tree_count: number;
  color: string;
}

export interface LayoutDoc {
  sectors: SectorDoc[];
}

export interface ConditionMeta {
  id: number;
  display_name: string;
  source_feature: string;
  range_label: string;
}

export interface MetaDoc {
  size: number;
  config: { lambda: number; epsilon: number; depth_cap: number };
  dataset_hash: string;
  optimal_objective: number;
  conditions: ConditionMeta[];
  colors: {
    chroma: number;
    leaf_gray: string;
    features: Record<string, { hue: number; index: number }>;
    conditions: Record<string, { luminance: number; rank: number; rgb: string }>;
  };
  trie: { height: number; total_trees: number; total_path_links: number };
  default_depth: number;
  importance?: Record<string, { root_fraction: number; any_depth_fraction: number }>;
}

export interface RuleNode {
  k: number | '_leaf' | '_root';
  n: number;
  p?: number;
  t?: number[];
  c?: RuleNode[];
}

export interface RulesDoc {
  height: number;
  total_trees: number;
  total_path_links: number;
  root: RuleNode;
  conditions: Record<string, { display_name: string; source_feature: string; range_label: string }>;
  trees: Record<string, { accuracy: number; objective: number; height: number; leaf_count: number }>;
}

export type TreeNodeDoc =
  | { type: 'leaf'; prediction: 0 | 1 }
  | { type: 'branch'; condition: number; false: TreeNodeDoc; true: TreeNodeDoc };

export interface NodeStatDoc {
  kind: 'branch' | 'leaf';
  sample_count: number;
  sample_fraction: number;
  correct_count?: number;
  leaf_accuracy?: number;
}

export interface PathStepDoc {
  condition: number;
  direction: 'true' | 'false';
}

export interface TreeDetailDoc {
  id: number;
  tree: TreeNodeDoc;
  metrics: {
    accuracy: number;
    objective: number;
    height: number;
    leaf_count: number;
    node_stats: NodeStatDoc[];
  };
  paths: {
    steps: PathStepDoc[];
    prediction: 0 | 1;
    leaf_accuracy: number;
    sample_fraction: number;
  }[];
}

export interface FeatureConstraintWire {
  name: string;
  mode: 'must_use' | 'must_not_use';
  depths: 'all' | number[];
}

export interface FilterSpecWire {
  acc?: [number, number];
  min_leaf?: number;
  heights?: number[];
  features?: FeatureConstraintWire[];
}

export interface FilterResponse {
  ids: number[];
  layout: LayoutDoc;
}

export interface FavoriteRecord {
  tree_id: number;
  comment: string;
  created_at: string;
  tree: TreeNodeDoc;
  metrics: TreeDetailDoc['metrics'];
}

export interface FavoritesDoc {
  records: FavoriteRecord[];
}
