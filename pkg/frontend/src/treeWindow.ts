import type { ConditionMeta, NodeStatDoc, PathStepDoc, TreeDetailDoc, TreeNodeDoc } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const WIDTH = 280; // diagram viewport
const WINDOW_PX = 300; // matches .tree-window in styles.css; jsdom has no layout
const LEVEL_HEIGHT = 64;
const FUNNEL_BASE = 200; // px at sample_fraction 1.0
const NODE_HEIGHT = 22;

interface LaidNode {
  doc: TreeNodeDoc;
  stat: NodeStatDoc;
  depth: number;
  x: number;
  parent?: LaidNode;
  viaTrue?: boolean;
}

function flatten(tree: TreeNodeDoc, stats: NodeStatDoc[]): LaidNode[] {
  // preorder, false child before true child, mirroring the metrics order
  const nodes: LaidNode[] = [];
  let cursor = 0;
  const walk = (doc: TreeNodeDoc, depth: number, parent?: LaidNode, viaTrue?: boolean) => {
    const node: LaidNode = { doc, stat: stats[cursor++], depth, x: 0, parent, viaTrue };
    nodes.push(node);
    if (doc.type === 'branch') {
      walk(doc.false, depth + 1, node, false);
      walk(doc.true, depth + 1, node, true);
    }
  };
  walk(tree, 0);
  const leaves = nodes.filter((n) => n.doc.type === 'leaf');
  leaves.forEach((leaf, i) => {
    leaf.x = ((i + 0.5) / leaves.length) * WIDTH;
  });
  for (const node of [...nodes].reverse()) {
    if (node.doc.type === 'branch') {
      const kids = nodes.filter((n) => n.parent === node);
      node.x = kids.reduce((acc, k) => acc + k.x, 0) / kids.length;
    }
  }
  return nodes;
}

function stepsMatch(node: LaidNode, steps: PathStepDoc[]): boolean {
  // does the root-to-node route follow a prefix of the given rule?
  const route: PathStepDoc[] = [];
  let cursor: LaidNode | undefined = node;
  while (cursor && cursor.parent) {
    const parentDoc = cursor.parent.doc as Extract<TreeNodeDoc, { type: 'branch' }>;
    route.unshift({ condition: parentDoc.condition, direction: cursor.viaTrue ? 'true' : 'false' });
    cursor = cursor.parent;
  }
  if (route.length > steps.length) return false;
  return route.every(
    (step, i) => step.condition === steps[i].condition && step.direction === steps[i].direction,
  );
}

export interface TreeWindowOptions {
  detail: TreeDetailDoc;
  conditions: ConditionMeta[];
  highlightRule?: PathStepDoc[];
  onBookmark(treeId: number, comment: string): void;
  onClose(windowEl: HTMLElement): void;
  bringToFront(windowEl: HTMLElement): void;
}

/** Draggable window showing one tree as a node-link or funnel diagram.
 *
 * Funnel mode scales node widths to the served sample fractions; leaf
 * opacity always encodes leaf accuracy.  Bookmarking and commenting go
 * straight to the favorites API.
 */
export class TreeWindow {
  readonly element: HTMLElement;
  funnelMode = false;
  private options: TreeWindowOptions;
  private body: HTMLElement;

  constructor(options: TreeWindowOptions) {
    this.options = options;
    this.element = document.createElement('div');
    this.element.className = 'tree-window';
    this.element.setAttribute('data-tree-id', String(options.detail.id));
    this.element.style.left = '40px';
    this.element.style.top = '40px';

    const header = document.createElement('header');
    header.className = 'tree-window-header';
    const title = document.createElement('span');
    const accuracy = options.detail.metrics.accuracy;
    title.textContent = `Tree ${options.detail.id} (accuracy ${accuracy.toFixed(3)})`;
    header.appendChild(title);

    const funnelToggle = document.createElement('button');
    funnelToggle.type = 'button';
    funnelToggle.className = 'funnel-toggle';
    funnelToggle.textContent = 'funnel';
    funnelToggle.title = 'scale nodes by training-sample share';
    funnelToggle.addEventListener('click', () => {
      this.funnelMode = !this.funnelMode;
      funnelToggle.classList.toggle('active', this.funnelMode);
      this.renderDiagram();
    });

    const heart = document.createElement('button');
    heart.type = 'button';
    heart.className = 'heart-button';
    heart.textContent = '♥';
    heart.title = 'bookmark this tree';
    heart.addEventListener('click', () => {
      const input = this.element.querySelector('.comment-input') as HTMLInputElement | null;
      this.options.onBookmark(this.options.detail.id, input?.value ?? '');
    });

    const close = document.createElement('button');
    close.type = 'button';
    close.className = 'close-button';
    close.textContent = '×';
    close.addEventListener('click', () => this.options.onClose(this.element));

    header.append(funnelToggle, heart, close);
    this.element.appendChild(header);

    this.body = document.createElement('div');
    this.body.className = 'tree-window-body';
    this.element.appendChild(this.body);

    const commentRow = document.createElement('div');
    commentRow.className = 'comment-row';
    const commentInput = document.createElement('input');
    commentInput.className = 'comment-input';
    commentInput.placeholder = 'why this tree?';
    const commentButton = document.createElement('button');
    commentButton.type = 'button';
    commentButton.className = 'comment-button';
    commentButton.textContent = 'comment';
    commentButton.addEventListener('click', () => {
      this.options.onBookmark(this.options.detail.id, commentInput.value);
    });
    commentRow.append(commentInput, commentButton);
    this.element.appendChild(commentRow);

    this.makeDraggable(header);
    this.element.addEventListener('pointerdown', () => this.options.bringToFront(this.element));
    this.renderDiagram();
  }

  private makeDraggable(handle: HTMLElement): void {
    let startX = 0;
    let startY = 0;
    let baseLeft = 0;
    let baseTop = 0;
    const onMove = (event: PointerEvent) => {
      const width = this.element.offsetWidth || WINDOW_PX;
      const height = this.element.offsetHeight || 200;
      const maxLeft = Math.max(0, (window.innerWidth || 1024) - width);
      const maxTop = Math.max(0, (window.innerHeight || 768) - height);
      const left = Math.min(maxLeft, Math.max(0, baseLeft + event.clientX - startX));
      const top = Math.min(maxTop, Math.max(0, baseTop + event.clientY - startY));
      this.element.style.left = `${left}px`;
      this.element.style.top = `${top}px`;
    };
    const onUp = () => {
      document.removeEventListener('pointermove', onMove);
      document.removeEventListener('pointerup', onUp);
    };
    handle.addEventListener('pointerdown', (event) => {
      startX = event.clientX;
      startY = event.clientY;
      baseLeft = parseFloat(this.element.style.left) || 0;
      baseTop = parseFloat(this.element.style.top) || 0;
      this.options.bringToFront(this.element);
      document.addEventListener('pointermove', onMove);
      document.addEventListener('pointerup', onUp);
    });
  }

  renderDiagram(): void {
    this.body.textContent = '';
    const { detail, conditions, highlightRule } = this.options;
    const nodes = flatten(detail.tree, detail.metrics.node_stats);
    const depthMax = Math.max(...nodes.map((n) => n.depth));
    const height = (depthMax + 1) * LEVEL_HEIGHT + 20;
    const svg = document.createElementNS(SVG_NS, 'svg');
    svg.setAttribute('viewBox', `0 0 ${WIDTH} ${height}`);
    svg.setAttribute('width', String(WIDTH));
    svg.setAttribute('height', String(height));
    svg.setAttribute('data-testid', 'tree-diagram');
    svg.setAttribute('data-mode', this.funnelMode ? 'funnel' : 'node-link');

    for (const node of nodes) {
      if (!node.parent) continue;
      const line = document.createElementNS(SVG_NS, 'line');
      line.setAttribute('x1', String(node.parent.x));
      line.setAttribute('y1', String(node.parent.depth * LEVEL_HEIGHT + 30));
      line.setAttribute('x2', String(node.x));
      line.setAttribute('y2', String(node.depth * LEVEL_HEIGHT + 30));
      const onRule = highlightRule && stepsMatch(node, highlightRule);
      line.setAttribute('class', onRule ? 'tree-edge rule-edge' : 'tree-edge');
      svg.appendChild(line);
    }

    for (const node of nodes) {
      const group = document.createElementNS(SVG_NS, 'g');
      const y = node.depth * LEVEL_HEIGHT + 30;
      const isLeaf = node.doc.type === 'leaf';
      const width = this.funnelMode ? node.stat.sample_fraction * FUNNEL_BASE : isLeaf ? 34 : 86;
      const rect = document.createElementNS(SVG_NS, 'rect');
      rect.setAttribute('x', String(node.x - width / 2));
      rect.setAttribute('y', String(y - NODE_HEIGHT / 2));
      rect.setAttribute('width', String(width));
      rect.setAttribute('height', String(NODE_HEIGHT));
      rect.setAttribute('rx', '4');
      rect.setAttribute('data-kind', node.doc.type);
      rect.setAttribute('data-sample-fraction', String(node.stat.sample_fraction));
      if (isLeaf) {
        const leafDoc = node.doc as Extract<TreeNodeDoc, { type: 'leaf' }>;
        const accuracy = node.stat.leaf_accuracy ?? 0;
        rect.setAttribute('class', leafDoc.prediction === 1 ? 'leaf-node positive' : 'leaf-node negative');
        rect.setAttribute('fill-opacity', String(0.25 + 0.75 * accuracy));
        rect.setAttribute('data-leaf-accuracy', String(accuracy));
        rect.setAttribute('data-prediction', String(leafDoc.prediction));
        const icon = document.createElementNS(SVG_NS, 'text');
        icon.setAttribute('x', String(node.x));
        icon.setAttribute('y', String(y + 5));
        icon.setAttribute('text-anchor', 'middle');
        icon.setAttribute('class', 'leaf-icon');
        icon.textContent = leafDoc.prediction === 1 ? '✓' : '✗';
        group.append(rect, icon);
      } else {
        const branchDoc = node.doc as Extract<TreeNodeDoc, { type: 'branch' }>;
        rect.setAttribute('class', 'branch-node');
        const label = document.createElementNS(SVG_NS, 'text');
        label.setAttribute('x', String(node.x));
        label.setAttribute('y', String(y + 4));
        label.setAttribute('text-anchor', 'middle');
        label.setAttribute('class', 'branch-label');
        label.textContent = conditions[branchDoc.condition]?.display_name ?? `c${branchDoc.condition}`;
        group.append(rect, label);
      }
      svg.appendChild(group);
    }
    this.body.appendChild(svg);
  }
}
