import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { ExplorerApp } from '../src/app.js';
import { FakeServer, tick } from './helpers.js';

let server: FakeServer;

async function mount(): Promise<ExplorerApp> {
  const root = document.createElement('div');
  document.body.appendChild(root);
  const app = new ExplorerApp(root, new ApiClient(server.fetch));
  await app.start();
  return app;
}

beforeEach(() => {
  document.body.innerHTML = '';
  server = new FakeServer();
});

describe('favorites panel', () => {
  it('the heart button bookmarks with the typed comment', async () => {
    const app = await mount();
    await app.openTreeWindow(0);
    const windowEl = app.root.querySelector('.tree-window[data-tree-id="0"]')!;
    (windowEl.querySelector('.comment-input') as HTMLInputElement).value = 'simple and fair';
    (windowEl.querySelector('.heart-button') as HTMLButtonElement).click();
    await tick();
    const posts = server.requests('POST', '/api/favorites');
    expect(posts.length).toBe(1);
    expect(posts[0].body).toEqual({ tree_id: 0, comment: 'simple and fair' });
    const record = app.root.querySelector('.favorite-record[data-tree-id="0"]')!;
    expect(record.querySelector('.favorite-comment')!.textContent).toBe('simple and fair');
  });

  it('bookmarks survive a page reload because the store is server-side', async () => {
    const first = await mount();
    await first.openTreeWindow(1);
    const windowEl = first.root.querySelector('.tree-window[data-tree-id="1"]')!;
    (windowEl.querySelector('.comment-input') as HTMLInputElement).value = 'kept across reloads';
    (windowEl.querySelector('.comment-button') as HTMLButtonElement).click();
    await tick();

    document.body.innerHTML = ''; // "reload": a fresh app against the same server
    const second = await mount();
    const record = second.root.querySelector('.favorite-record[data-tree-id="1"]')!;
    expect(record).not.toBeNull();
    expect(record.querySelector('.favorite-comment')!.textContent).toBe('kept across reloads');
  });

  it('remove unbookmarks on the server and in the list', async () => {
    const app = await mount();
    await app.addFavorite(0, 'temporary');
    expect(server.favorites.has(0)).toBe(true);
    (app.root.querySelector('.favorite-remove') as HTMLButtonElement).click();
    await tick();
    expect(server.favorites.has(0)).toBe(false);
    expect(app.root.querySelector('.favorite-record')).toBeNull();
  });

  it('the save action downloads from the export endpoint', async () => {
    const app = await mount();
    const anchor = app.root.querySelector('.save-button') as HTMLAnchorElement;
    expect(anchor.getAttribute('href')).toBe('/api/export');
    expect(anchor.getAttribute('download')).toBe('curated-trees.json');
  });

  it('opening a favorite brings up its tree window', async () => {
    const app = await mount();
    await app.addFavorite(0, '');
    (app.root.querySelector('.favorite-open') as HTMLButtonElement).click();
    await tick();
    expect(app.root.querySelector('.tree-window[data-tree-id="0"]')).not.toBeNull();
  });
});
