import { sectorPath } from './arcs.js';
import type { ConditionMeta, LayoutDoc, SectorDoc, TrieKey } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const SIZE = 480;
const HOLE = 42;

export interface SunburstEvents {
  /** A condition sector was clicked: re-root one level deeper. */
  onZoom(relativePath: number[]): void;
  /** The center hub or reset chip was clicked: back to the full set. */
  onReset(): void;
  onLeafHover(sector: SectorDoc, event: PointerEvent): void;
  onLeafLeave(): void;
  onLeafClick(sector: SectorDoc): void;
  onDepthChange(depth: number): void;
}

/** Zoomable sunburst plus its depth panel; a pure renderer of layout docs.
 *
 * Every angle and count shown comes verbatim from the layout document;
 * the view only converts angles to arc paths.
 */
export class SunburstView {
  readonly element: HTMLElement;
  private chart: HTMLElement;
  private depthPanel: HTMLElement;
  private conditions: ConditionMeta[];
  private events: SunburstEvents;
  private maxDepth: number;

  constructor(conditions: ConditionMeta[], maxDepth: number, events: SunburstEvents) {
    this.conditions = conditions;
    this.events = events;
    this.maxDepth = maxDepth;
    this.element = document.createElement('section');
    this.element.className = 'sunburst-panel';
    this.element.innerHTML = '<h2>Rashomon Overview</h2>';
    this.depthPanel = document.createElement('div');
    this.depthPanel.className = 'depth-panel';
    this.chart = document.createElement('div');
    this.chart.className = 'sunburst-chart';
    this.element.append(this.depthPanel, this.chart);
  }

  conditionName(id: number): string {
    return this.conditions[id]?.display_name ?? `condition ${id}`;
  }

  render(doc: LayoutDoc, prefix: number[], depth: number, prefixColors: string[]): void {
    this.renderDepthPanel(prefix, depth, prefixColors);
    this.chart.textContent = '';
    const svg = document.createElementNS(SVG_NS, 'svg');
    svg.setAttribute('viewBox', `0 0 ${SIZE} ${SIZE}`);
    svg.setAttribute('width', String(SIZE));
    svg.setAttribute('height', String(SIZE));
    svg.setAttribute('data-testid', 'sunburst');
    const cx = SIZE / 2;
    const cy = SIZE / 2;
    const rings = doc.sectors.length ? Math.max(...doc.sectors.map((s) => s.ring)) + 1 : 1;
    const ringWidth = (SIZE / 2 - HOLE - 8) / rings;

    const hub = document.createElementNS(SVG_NS, 'circle');
    hub.setAttribute('cx', String(cx));
    hub.setAttribute('cy', String(cy));
    hub.setAttribute('r', String(HOLE - 4));
    hub.setAttribute('class', 'sunburst-hub');
    hub.addEventListener('click', () => this.events.onReset());
    svg.appendChild(hub);

    for (const sector of doc.sectors) {
      const rIn = HOLE + sector.ring * ringWidth;
      const rOut = rIn + ringWidth - 1.5;
      const path = document.createElementNS(SVG_NS, 'path');
      path.setAttribute('d', sectorPath(cx, cy, rIn, rOut, sector.start_angle, sector.end_angle));
      path.setAttribute('fill', sector.color);
      path.setAttribute('class', sector.kind === 'leaf' ? 'sector sector-leaf' : 'sector');
      path.setAttribute('data-kind', sector.kind);
      path.setAttribute('data-ring', String(sector.ring));
      path.setAttribute('data-node-path', JSON.stringify(sector.node_path));
      path.setAttribute('data-start-angle', String(sector.start_angle));
      path.setAttribute('data-end-angle', String(sector.end_angle));
      path.setAttribute('data-tree-count', String(sector.tree_count));
      const title = document.createElementNS(SVG_NS, 'title');
      title.textContent = `${this.sectorLabel(sector.node_path)}: ${sector.tree_count} trees`;
      path.appendChild(title);
      if (sector.kind === 'condition') {
        path.addEventListener('click', () => {
          this.events.onZoom(sector.node_path as number[]);
        });
      } else {
        path.addEventListener('pointerenter', (event) =>
          this.events.onLeafHover(sector, event as PointerEvent),
        );
        path.addEventListener('pointerleave', () => this.events.onLeafLeave());
        path.addEventListener('click', () => this.events.onLeafClick(sector));
      }
      svg.appendChild(path);
    }
    this.chart.appendChild(svg);
  }

  private sectorLabel(nodePath: TrieKey[]): string {
    const last = nodePath[nodePath.length - 1];
    return last === '_leaf' ? 'rule ends here' : this.conditionName(last as number);
  }

  private renderDepthPanel(prefix: number[], depth: number, prefixColors: string[]): void {
    this.depthPanel.textContent = '';
    const crumbs = document.createElement('span');
    crumbs.className = 'crumbs';
    const rootChip = document.createElement('button');
    rootChip.type = 'button';
    rootChip.className = 'crumb crumb-root';
    rootChip.textContent = 'all trees';
    rootChip.addEventListener('click', () => this.events.onReset());
    crumbs.appendChild(rootChip);
    prefix.forEach((conditionId, i) => {
      const chip = document.createElement('span');
      chip.className = 'crumb';
      chip.textContent = this.conditionName(conditionId);
      chip.style.background = prefixColors[i] ?? '#999';
      chip.setAttribute('data-condition', String(conditionId));
      crumbs.appendChild(chip);
    });
    const depthBox = document.createElement('span');
    depthBox.className = 'depth-buttons';
    depthBox.append('depth: ');
    for (let level = 1; level <= this.maxDepth; level++) {
      const button = document.createElement('button');
      button.type = 'button';
      button.textContent = String(level);
      button.className = level === depth ? 'depth-button active' : 'depth-button';
      button.setAttribute('data-depth', String(level));
      button.addEventListener('click', () => this.events.onDepthChange(level));
      depthBox.appendChild(button);
    }
    this.depthPanel.append(crumbs, depthBox);
  }
}
