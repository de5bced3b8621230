import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { ExplorerApp } from '../src/app.js';
import type { LayoutDoc } from '../src/types.js';
import { FakeServer, pointer, tick } from './helpers.js';

let server: FakeServer;
let app: ExplorerApp;

async function mount(): Promise<ExplorerApp> {
  const root = document.createElement('div');
  document.body.appendChild(root);
  const instance = new ExplorerApp(root, new ApiClient(server.fetch));
  await instance.start();
  return instance;
}

function sectorPaths(): SVGPathElement[] {
  return [...app.root.querySelectorAll('[data-testid="sunburst"] path')] as SVGPathElement[];
}

beforeEach(async () => {
  document.body.innerHTML = '';
  server = new FakeServer();
  app = await mount();
});

describe('sunburst overview', () => {
  it('renders exactly the served sectors with verbatim angles and counts', () => {
    const served = server.layouts['depth=2'];
    const paths = sectorPaths();
    expect(paths.length).toBe(served.sectors.length);
    served.sectors.forEach((sector, i) => {
      expect(Number(paths[i].getAttribute('data-start-angle'))).toBe(sector.start_angle);
      expect(Number(paths[i].getAttribute('data-end-angle'))).toBe(sector.end_angle);
      expect(Number(paths[i].getAttribute('data-tree-count'))).toBe(sector.tree_count);
      expect(paths[i].getAttribute('fill')).toBe(sector.color);
      expect(paths[i].getAttribute('data-kind')).toBe(sector.kind);
    });
  });

  it('asks the server for the default depth from /api/meta', () => {
    expect(app.state.depth).toBe(server.meta.default_depth);
    const hierarchyCalls = server.requests('GET', '/api/hierarchy');
    expect(hierarchyCalls[0].path).toBe(`/api/hierarchy?depth=${server.meta.default_depth}`);
  });

  it('leaf sectors are gray and marked as leaves', () => {
    const leaves = sectorPaths().filter((p) => p.getAttribute('data-kind') === 'leaf');
    expect(leaves.length).toBeGreaterThan(0);
    for (const leaf of leaves) {
      expect(leaf.getAttribute('fill')).toBe(server.meta.colors.leaf_gray);
    }
  });

  it('depth panel switches the requested ring count', async () => {
    const button = app.root.querySelector('[data-depth="1"]') as HTMLButtonElement;
    button.click();
    await tick();
    const rings = new Set(sectorPaths().map((p) => p.getAttribute('data-ring')));
    expect(rings).toEqual(new Set(['0']));
    expect(server.requests('GET', '/api/hierarchy?depth=1').length).toBe(1);
  });

  it('clicking a condition sector re-roots at that condition', async () => {
    const f0 = sectorPaths().find((p) => p.getAttribute('data-node-path') === '[0]')!;
    f0.dispatchEvent(pointer('click'));
    await tick();
    expect(app.state.prefix).toEqual([0]);
    const last = server.requests('GET', '/api/hierarchy').at(-1)!;
    expect(last.path).toContain('prefix=0');
    const served = server.layouts['depth=2&prefix=0'];
    const paths = sectorPaths();
    expect(paths.length).toBe(served.sectors.length);
    expect(Number(paths[0].getAttribute('data-start-angle'))).toBe(served.sectors[0].start_angle);
  });

  it('shows the clicked sector color as a depth-panel chip while zoomed', async () => {
    const f0 = sectorPaths().find((p) => p.getAttribute('data-node-path') === '[0]')!;
    const f0Color = f0.getAttribute('fill');
    f0.dispatchEvent(pointer('click'));
    await tick();
    const chip = app.root.querySelector('.crumb[data-condition="0"]') as HTMLElement;
    expect(chip).not.toBeNull();
    expect(chip.textContent).toBe('f0');
    expect(chip.style.background).toBeTruthy();
    expect(server.meta.colors.conditions['0'].rgb).toBe(f0Color);
  });

  it('re-root then reset restores a view identical to the initial render', async () => {
    const initial = app.root.querySelector('.sunburst-chart')!.innerHTML;
    const f0 = sectorPaths().find((p) => p.getAttribute('data-node-path') === '[0]')!;
    f0.dispatchEvent(pointer('click'));
    await tick();
    expect(app.root.querySelector('.sunburst-chart')!.innerHTML).not.toBe(initial);
    (app.root.querySelector('.crumb-root') as HTMLButtonElement).click();
    await tick();
    expect(app.state.prefix).toEqual([]);
    expect(app.root.querySelector('.sunburst-chart')!.innerHTML).toBe(initial);
  });

  it('widths on screen follow the served angular spans', () => {
    const served = server.layouts['depth=2'];
    const byPath = new Map(served.sectors.map((s) => [JSON.stringify(s.node_path), s]));
    for (const path of sectorPaths()) {
      const doc = byPath.get(path.getAttribute('data-node-path')!)!;
      const width = Number(path.getAttribute('data-end-angle')) - Number(path.getAttribute('data-start-angle'));
      expect(width).toBeCloseTo(doc.end_angle - doc.start_angle, 12);
    }
  });
});

describe('leaf hover preview', () => {
  function leafSector(): SVGPathElement {
    return sectorPaths().find(
      (p) => p.getAttribute('data-kind') === 'leaf' && p.getAttribute('data-node-path') === '[0,"_leaf"]',
    )!;
  }

  it('fetches the linked tree and highlights the matching rule', async () => {
    leafSector().dispatchEvent(pointer('pointerenter', { clientX: 50, clientY: 60 }));
    await tick();
    expect(server.requests('GET', '/api/trees/0').length).toBe(1);
    const preview = app.root.querySelector('.leaf-preview')!;
    expect(preview.classList.contains('hidden')).toBe(false);
    const ruleEdges = preview.querySelectorAll('.rule-edge');
    expect(ruleEdges.length).toBe(1); // the one-step rule [f0]
    leafSector().dispatchEvent(pointer('pointerleave'));
    expect(preview.classList.contains('hidden')).toBe(true);
  });

  it('offers a retry tooltip when the fetch fails', async () => {
    server.failTrees = true;
    leafSector().dispatchEvent(pointer('pointerenter'));
    await tick();
    const retry = app.root.querySelector('.preview-retry') as HTMLButtonElement;
    expect(retry).not.toBeNull();
    server.failTrees = false;
    retry.click();
    await tick();
    expect(app.root.querySelector('.leaf-preview [data-testid="tree-diagram"]')).not.toBeNull();
  });
});

describe('layout document sanity', () => {
  it('fixture ring-0 spans the full circle', () => {
    const served = server.layouts['depth=1'] as LayoutDoc;
    const total = served.sectors
      .filter((s) => s.ring === 0)
      .reduce((acc, s) => acc + (s.end_angle - s.start_angle), 0);
    expect(total).toBeCloseTo(2 * Math.PI, 9);
  });
});
