import { mountExplorer } from './app.js';

const root = document.getElementById('app');
if (root) {
  mountExplorer(root).catch((error) => {
    root.textContent = '';
    const banner = document.createElement('div');
    banner.className = 'error-banner';
    banner.textContent = `failed to load the explorer: ${(error as Error).message}`;
    root.appendChild(banner);
  });
}
