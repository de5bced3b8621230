/** In-memory stand-in for the explorer service, built on payload fixtures
 * captured from the real server.  Records every request so tests can assert
 * the UI displays exactly what was served.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import type { FetchFn } from '../src/api.js';
import type { FavoriteRecord, LayoutDoc, MetaDoc, RulesDoc, TreeDetailDoc } from '../src/types.js';

const fixtureDir = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(fixtureDir, name), 'utf8')) as T;
}

export interface LoggedRequest {
  method: string;
  path: string;
  body?: unknown;
}

export class FakeServer {
  meta = fixture<MetaDoc>('meta.json');
  rules = fixture<RulesDoc>('rules.json');
  layouts: Record<string, LayoutDoc> = {
    'depth=1': fixture('hierarchy_depth1.json'),
    'depth=2': fixture('hierarchy_depth2.json'),
    'depth=3': fixture('hierarchy_depth3.json'),
    'depth=2&prefix=0': fixture('hierarchy_prefix0_depth2.json'),
    'depth=3&prefix=0': fixture('hierarchy_prefix0_depth3.json'),
  };
  trees: Record<string, TreeDetailDoc> = {
    '0': fixture('tree0.json'),
    '1': fixture('tree1.json'),
  };
  filterVacuous = fixture<{ ids: number[]; layout: LayoutDoc }>('filter_vacuous.json');
  filterMustUseF0 = fixture<{ ids: number[]; layout: LayoutDoc }>('filter_must_use_f0_root.json');

  log: LoggedRequest[] = [];
  favorites = new Map<number, FavoriteRecord>();
  failTrees = false;
  /** Optional per-request delay keyed by a path substring, for race tests. */
  delays: Array<{ match: string; ms: number; once?: boolean }> = [];

  requests(method: string, pathPrefix: string): LoggedRequest[] {
    return this.log.filter((r) => r.method === method && r.path.startsWith(pathPrefix));
  }

  fetch: FetchFn = async (input, init) => {
    const method = init?.method ?? 'GET';
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    this.log.push({ method, path: input, body });

    for (const delay of [...this.delays]) {
      if (input.includes(delay.match)) {
        if (delay.once) this.delays.splice(this.delays.indexOf(delay), 1);
        await new Promise((resolve) => setTimeout(resolve, delay.ms));
      }
    }

    const respond = (doc: unknown, status = 200) =>
      new Response(JSON.stringify(doc), {
        status,
        headers: { 'Content-Type': 'application/json' },
      });

    const [path, query = ''] = input.split('?');
    if (path === '/api/meta') return respond(this.meta);
    if (path === '/api/rules') return respond(this.rules);
    if (path === '/api/hierarchy') {
      const doc = this.layouts[query];
      return doc ? respond(doc) : respond({ error: `no fixture for ${query}` }, 404);
    }
    const treeMatch = path.match(/^\/api\/trees\/(\d+)$/);
    if (treeMatch) {
      if (this.failTrees) return respond({ error: 'injected failure' }, 500);
      const doc = this.trees[treeMatch[1]];
      return doc ? respond(doc) : respond({ error: 'unknown tree' }, 404);
    }
    if (path === '/api/filter' && method === 'POST') {
      const spec = body as { features?: { name: string; depths?: unknown }[]; min_leaf?: number };
      if (typeof spec.min_leaf === 'number' && spec.min_leaf > 100) {
        return respond({ error: "field 'min_leaf' is out of range" }, 400);
      }
      if (!spec.features || spec.features.length === 0) return respond(this.filterVacuous);
      return respond(this.filterMustUseF0);
    }
    if (path === '/api/favorites' && method === 'GET') {
      return respond({ records: [...this.favorites.values()] });
    }
    if (path === '/api/favorites' && method === 'POST') {
      const { tree_id, comment } = body as { tree_id: number; comment: string };
      const detail = this.trees[String(tree_id)];
      if (!detail) return respond({ error: 'unknown tree' }, 404);
      const record: FavoriteRecord = {
        tree_id,
        comment,
        created_at: this.favorites.get(tree_id)?.created_at ?? new Date().toISOString(),
        tree: detail.tree,
        metrics: detail.metrics,
      };
      this.favorites.set(tree_id, record);
      return respond(record, 201);
    }
    const favoriteMatch = path.match(/^\/api\/favorites\/(\d+)$/);
    if (favoriteMatch && method === 'DELETE') {
      const id = Number(favoriteMatch[1]);
      if (!this.favorites.has(id)) return respond({ error: 'not bookmarked' }, 404);
      this.favorites.delete(id);
      return new Response(null, { status: 204 });
    }
    return respond({ error: `no such endpoint: ${method} ${path}` }, 404);
  };
}

export function tick(ms = 0): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export function pointer(type: string, options: MouseEventInit = {}): MouseEvent {
  return new MouseEvent(type, { bubbles: true, cancelable: true, ...options });
}
