import { ApiClient } from './api.js';
import { FavoritesPanel } from './favorites.js';
import { SearchPanel } from './searchPanel.js';
import { SunburstView } from './sunburst.js';
import { TreeWindow } from './treeWindow.js';
import type {
  FilterSpecWire,
  LayoutDoc,
  MetaDoc,
  RuleNode,
  RulesDoc,
  SectorDoc,
  TrieKey,
} from './types.js';

export interface ViewState {
  prefix: number[];
  depth: number;
  filter: FilterSpecWire | null;
  openWindows: number[];
  hoveredLeaf: SectorDoc | null;
}

/** Composition root: owns the view state and all service traffic.
 *
 * Stale filter/layout responses are discarded by sequence number, so
 * the overview always reflects the latest interaction.
 */
export class ExplorerApp {
  readonly state: ViewState = {
    prefix: [],
    depth: 1,
    filter: null,
    openWindows: [],
    hoveredLeaf: null,
  };
  readonly root: HTMLElement;
  private api: ApiClient;
  private meta!: MetaDoc;
  private rules!: RulesDoc;
  private sunburst!: SunburstView;
  private search!: SearchPanel;
  private favorites!: FavoritesPanel;
  private windowLayer!: HTMLElement;
  private preview!: HTMLElement;
  private requestSeq = 0;
  private zTop = 10;
  private windows = new Map<number, TreeWindow>();

  constructor(root: HTMLElement, api: ApiClient) {
    this.root = root;
    this.api = api;
  }

  async start(): Promise<void> {
    this.meta = await this.api.meta();
    this.rules = await this.api.rules();
    this.state.depth = this.meta.default_depth;

    this.root.textContent = '';
    this.root.className = 'explorer';

    this.sunburst = new SunburstView(this.meta.conditions, this.meta.trie.height + 1, {
      onZoom: (relativePath) => void this.zoomInto(relativePath),
      onReset: () => void this.reset(),
      onLeafHover: (sector, event) => void this.showLeafPreview(sector, event),
      onLeafLeave: () => this.hidePreview(),
      onLeafClick: (sector) => void this.openLeafWindows(sector),
      onDepthChange: (depth) => void this.setDepth(depth),
    });
    this.search = new SearchPanel(this.meta.conditions, this.meta.trie.height, (spec) =>
      void this.applyFilter(spec),
    );
    this.favorites = new FavoritesPanel(
      (treeId) => void this.removeFavorite(treeId),
      (treeId) => void this.openTreeWindow(treeId),
    );

    const main = document.createElement('div');
    main.className = 'explorer-main';
    main.appendChild(this.sunburst.element);
    const side = document.createElement('div');
    side.className = 'explorer-side';
    side.append(this.search.element, this.favorites.element);
    main.appendChild(side);
    this.root.appendChild(main);

    this.windowLayer = document.createElement('div');
    this.windowLayer.className = 'window-layer';
    this.root.appendChild(this.windowLayer);

    this.preview = document.createElement('div');
    this.preview.className = 'leaf-preview hidden';
    this.root.appendChild(this.preview);

    await this.refreshOverview();
    await this.refreshFavorites();
  }

  // ----------------------------------------------------------------- overview

  private async fetchLayout(): Promise<{ layout: LayoutDoc; filteredCount: number | null }> {
    if (this.state.filter) {
      const response = await this.api.filter(this.state.filter, this.state.depth);
      return { layout: response.layout, filteredCount: response.ids.length };
    }
    const layout = await this.api.hierarchy(this.state.depth, this.state.prefix);
    return { layout, filteredCount: null };
  }

  async refreshOverview(): Promise<void> {
    const seq = ++this.requestSeq;
    const { layout, filteredCount } = await this.fetchLayout();
    if (seq !== this.requestSeq) return; // a newer interaction superseded this one
    if (filteredCount === null) {
      this.sunburst.element.removeAttribute('data-filtered-count');
    } else {
      this.sunburst.element.setAttribute('data-filtered-count', String(filteredCount));
    }
    const colors = this.state.prefix.map(
      (cid) => this.meta.colors.conditions[String(cid)]?.rgb ?? '#999999',
    );
    this.sunburst.render(layout, this.state.prefix, this.state.depth, colors);
  }

  async zoomInto(relativePath: number[]): Promise<void> {
    // a condition sector's path is condition ids from the current root
    this.state.filter = null;
    this.state.prefix = [...this.state.prefix, ...relativePath];
    await this.refreshOverview();
  }

  async reset(): Promise<void> {
    this.state.prefix = [];
    this.state.filter = null;
    await this.refreshOverview();
  }

  async setDepth(depth: number): Promise<void> {
    this.state.depth = depth;
    await this.refreshOverview();
  }

  async applyFilter(spec: FilterSpecWire): Promise<void> {
    this.state.filter = spec;
    this.state.prefix = [];
    try {
      await this.refreshOverview();
    } catch (error) {
      this.search.showError((error as Error).message);
    }
  }

  // ------------------------------------------------------------ leaf sectors

  linkedTreeIds(sector: SectorDoc): number[] {
    const path: TrieKey[] = [...this.state.prefix, ...sector.node_path];
    let node: RuleNode | undefined = this.rules.root;
    for (const key of path) {
      node = node?.c?.find((child) => child.k === key);
      if (!node) return [];
    }
    return node.t ?? [];
  }

  async showLeafPreview(sector: SectorDoc, event: PointerEvent): Promise<void> {
    const ids = this.linkedTreeIds(sector);
    if (!ids.length) return;
    this.state.hoveredLeaf = sector;
    this.preview.classList.remove('hidden');
    this.preview.style.left = `${(event.clientX || 0) + 12}px`;
    this.preview.style.top = `${(event.clientY || 0) + 12}px`;
    this.preview.textContent = 'loading tree…';
    try {
      const detail = await this.api.tree(ids[0]);
      this.preview.textContent = '';
      const featureSequence = [...this.state.prefix, ...sector.node_path].filter(
        (key): key is number => key !== '_leaf',
      );
      const rule = detail.paths.find(
        (p) =>
          p.steps.length === featureSequence.length &&
          p.steps.every((step, i) => step.condition === featureSequence[i]),
      );
      const window = new TreeWindow({
        detail,
        conditions: this.meta.conditions,
        highlightRule: rule?.steps,
        onBookmark: () => undefined,
        onClose: () => undefined,
        bringToFront: () => undefined,
      });
      window.element.classList.add('preview-window');
      this.preview.appendChild(window.element);
    } catch {
      this.preview.textContent = '';
      const note = document.createElement('span');
      note.textContent = 'could not load tree ';
      const retry = document.createElement('button');
      retry.type = 'button';
      retry.className = 'preview-retry';
      retry.textContent = 'retry';
      retry.addEventListener('click', () => void this.showLeafPreview(sector, event));
      this.preview.append(note, retry);
    }
  }

  hidePreview(): void {
    this.state.hoveredLeaf = null;
    this.preview.classList.add('hidden');
    this.preview.textContent = '';
  }

  async openLeafWindows(sector: SectorDoc): Promise<void> {
    this.hidePreview();
    for (const id of this.linkedTreeIds(sector)) {
      await this.openTreeWindow(id);
    }
  }

  // ------------------------------------------------------------ tree windows

  async openTreeWindow(treeId: number): Promise<void> {
    if (this.windows.has(treeId)) {
      this.bringToFront(this.windows.get(treeId)!.element);
      return;
    }
    const detail = await this.api.tree(treeId);
    const window = new TreeWindow({
      detail,
      conditions: this.meta.conditions,
      onBookmark: (id, comment) => void this.addFavorite(id, comment),
      onClose: (el) => {
        el.remove();
        this.windows.delete(treeId);
        this.state.openWindows = this.state.openWindows.filter((id) => id !== treeId);
      },
      bringToFront: (el) => this.bringToFront(el),
    });
    const offset = 30 + this.windows.size * 28;
    window.element.style.left = `${offset}px`;
    window.element.style.top = `${offset}px`;
    this.windows.set(treeId, window);
    this.state.openWindows.push(treeId);
    this.windowLayer.appendChild(window.element);
    this.bringToFront(window.element);
  }

  private bringToFront(el: HTMLElement): void {
    this.zTop += 1;
    el.style.zIndex = String(this.zTop);
  }

  // -------------------------------------------------------------- favorites

  async refreshFavorites(): Promise<void> {
    this.favorites.render(await this.api.favorites());
  }

  async addFavorite(treeId: number, comment: string): Promise<void> {
    await this.api.bookmark(treeId, comment);
    await this.refreshFavorites();
  }

  async removeFavorite(treeId: number): Promise<void> {
    await this.api.unbookmark(treeId);
    await this.refreshFavorites();
  }
}

export async function mountExplorer(root: HTMLElement, api = new ApiClient()): Promise<ExplorerApp> {
  const app = new ExplorerApp(root, api);
  await app.start();
  return app;
}
