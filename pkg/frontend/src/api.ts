import type {
  FavoriteRecord,
  FavoritesDoc,
  FilterResponse,
  FilterSpecWire,
  LayoutDoc,
  MetaDoc,
  RulesDoc,
  TreeDetailDoc,
} from './types.js';

export type FetchFn = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client; every view talks to the service through this. */
export class ApiClient {
  private fetchFn: FetchFn;

  constructor(fetchFn?: FetchFn) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(path);
    if (!resp.ok) throw new Error(`GET ${path} failed: ${resp.status}`);
    return (await resp.json()) as T;
  }

  meta(): Promise<MetaDoc> {
    return this.getJson('/api/meta');
  }

  rules(): Promise<RulesDoc> {
    return this.getJson('/api/rules');
  }

  hierarchy(depth: number, prefix: number[]): Promise<LayoutDoc> {
    const params = new URLSearchParams({ depth: String(depth) });
    if (prefix.length) params.set('prefix', prefix.join(','));
    return this.getJson(`/api/hierarchy?${params.toString()}`);
  }

  tree(id: number): Promise<TreeDetailDoc> {
    return this.getJson(`/api/trees/${id}`);
  }

  async filter(spec: FilterSpecWire, depth: number): Promise<FilterResponse> {
    const resp = await this.fetchFn(`/api/filter?depth=${depth}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(spec),
    });
    if (!resp.ok) {
      const body = await resp.json().catch(() => ({ error: `status ${resp.status}` }));
      throw new Error((body as { error?: string }).error ?? `status ${resp.status}`);
    }
    return (await resp.json()) as FilterResponse;
  }

  favorites(): Promise<FavoritesDoc> {
    return this.getJson('/api/favorites');
  }

  async bookmark(treeId: number, comment: string): Promise<FavoriteRecord> {
    const resp = await this.fetchFn('/api/favorites', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ tree_id: treeId, comment }),
    });
    if (!resp.ok) throw new Error(`bookmark failed: ${resp.status}`);
    return (await resp.json()) as FavoriteRecord;
  }

  async unbookmark(treeId: number): Promise<void> {
    const resp = await this.fetchFn(`/api/favorites/${treeId}`, { method: 'DELETE' });
    if (!resp.ok) throw new Error(`unbookmark failed: ${resp.status}`);
  }
}
