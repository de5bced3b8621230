import type { FavoritesDoc } from './types.js';

/** Favorite Panel: bookmarked trees with comments, unbookmark, and save.
 *
 * The list mirrors the server store; the save anchor points straight at
 * the export endpoint so the browser downloads the curation file.
 */
export class FavoritesPanel {
  readonly element: HTMLElement;
  private listBox: HTMLElement;
  private onRemove: (treeId: number) => void;
  private onOpen: (treeId: number) => void;

  constructor(onRemove: (treeId: number) => void, onOpen: (treeId: number) => void) {
    this.onRemove = onRemove;
    this.onOpen = onOpen;
    this.element = document.createElement('section');
    this.element.className = 'favorites-panel';
    this.element.innerHTML = '<h2>Favorite Panel</h2>';
    const save = document.createElement('a');
    save.className = 'save-button';
    save.href = '/api/export';
    save.setAttribute('download', 'curated-trees.json');
    save.textContent = '↓ save curated trees';
    this.listBox = document.createElement('ul');
    this.listBox.className = 'favorites-list';
    this.element.append(save, this.listBox);
  }

  render(doc: FavoritesDoc): void {
    this.listBox.textContent = '';
    for (const record of doc.records) {
      const item = document.createElement('li');
      item.className = 'favorite-record';
      item.setAttribute('data-tree-id', String(record.tree_id));
      const open = document.createElement('button');
      open.type = 'button';
      open.className = 'favorite-open';
      open.textContent = `Tree ${record.tree_id}`;
      open.addEventListener('click', () => this.onOpen(record.tree_id));
      const comment = document.createElement('span');
      comment.className = 'favorite-comment';
      comment.textContent = record.comment;
      const when = document.createElement('time');
      when.textContent = record.created_at;
      const remove = document.createElement('button');
      remove.type = 'button';
      remove.className = 'favorite-remove';
      remove.textContent = 'remove';
      remove.addEventListener('click', () => this.onRemove(record.tree_id));
      item.append(open, comment, when, remove);
      this.listBox.appendChild(item);
    }
  }
}
