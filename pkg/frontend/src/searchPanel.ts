import type { ConditionMeta, FilterSpecWire } from './types.js';

/** Filter controls; every edit posts the wire-form spec to the service.
 *
 * The panel owns no filtering logic: it serializes slider and checkbox
 * state and hands it to the app, which asks the server.
 */
export class SearchPanel {
  readonly element: HTMLElement;
  private onChange: (spec: FilterSpecWire) => void;
  private features: string[];
  private maxHeight: number;
  private errorBox: HTMLElement;

  constructor(conditions: ConditionMeta[], maxHeight: number, onChange: (spec: FilterSpecWire) => void) {
    this.onChange = onChange;
    this.maxHeight = maxHeight;
    this.features = [...new Set(conditions.map((c) => c.source_feature))];
    this.element = document.createElement('section');
    this.element.className = 'search-panel';
    this.element.innerHTML = `
      <h2>Search Panel</h2>
      <label>accuracy at least
        <input type="range" class="acc-min" min="0" max="1" step="0.01" value="0">
        <output class="acc-min-value">0.00</output>
      </label>
      <label>minimum leaf samples
        <input type="number" class="min-leaf" min="0" step="1" value="0">
      </label>
      <fieldset class="heights"><legend>tree heights</legend></fieldset>
      <fieldset class="feature-rules"><legend>features</legend></fieldset>
      <div class="filter-error" role="alert"></div>
    `;
    this.errorBox = this.element.querySelector('.filter-error') as HTMLElement;

    const heightBox = this.element.querySelector('.heights') as HTMLElement;
    for (let h = 0; h <= maxHeight; h++) {
      const label = document.createElement('label');
      const box = document.createElement('input');
      box.type = 'checkbox';
      box.className = 'height-box';
      box.value = String(h);
      label.append(box, ` ${h}`);
      heightBox.appendChild(label);
    }

    const featureBox = this.element.querySelector('.feature-rules') as HTMLElement;
    for (const feature of this.features) {
      const row = document.createElement('label');
      row.className = 'feature-row';
      const select = document.createElement('select');
      select.className = 'feature-mode';
      select.setAttribute('data-feature', feature);
      for (const [value, text] of [
        ['any', 'no constraint'],
        ['must_use', 'must use'],
        ['must_not_use', 'must not use'],
      ]) {
        const option = document.createElement('option');
        option.value = value;
        option.textContent = text;
        select.appendChild(option);
      }
      row.append(`${feature}: `, select);
      featureBox.appendChild(row);
    }

    this.element.addEventListener('change', () => this.emit());
    const accMin = this.element.querySelector('.acc-min') as HTMLInputElement;
    accMin.addEventListener('input', () => {
      (this.element.querySelector('.acc-min-value') as HTMLElement).textContent = Number(
        accMin.value,
      ).toFixed(2);
    });
  }

  spec(): FilterSpecWire {
    const accMin = Number((this.element.querySelector('.acc-min') as HTMLInputElement).value);
    const minLeaf = Number((this.element.querySelector('.min-leaf') as HTMLInputElement).value);
    const heights = [...this.element.querySelectorAll('.height-box')]
      .filter((box) => (box as HTMLInputElement).checked)
      .map((box) => Number((box as HTMLInputElement).value));
    const features = [...this.element.querySelectorAll('.feature-mode')]
      .map((select) => select as HTMLSelectElement)
      .filter((select) => select.value !== 'any')
      .map((select) => ({
        name: select.getAttribute('data-feature') as string,
        mode: select.value as 'must_use' | 'must_not_use',
        depths: 'all' as const,
      }));
    return {
      acc: [accMin, 1.0],
      min_leaf: minLeaf,
      heights,
      features,
    };
  }

  showError(message: string): void {
    this.errorBox.textContent = message;
  }

  clearError(): void {
    this.errorBox.textContent = '';
  }

  private emit(): void {
    this.clearError();
    this.onChange(this.spec());
  }
}
