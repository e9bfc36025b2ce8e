/**
 * Studio page wiring: sign browser/editor, sentence builder, and preview.
 * All state lives on the service (the editor holds only a working copy);
 * rendering delegates to whatever X3D engine the page script URL loads.
 */

import { Diagnostic, SentenceDocument, SignSummary, StudioApi } from './api.js';
import {
  addKey,
  canSave,
  committed,
  deleteKey,
  duration,
  EditorSession,
  isDirty,
  moveKey,
  openSession,
  setKeyYpr,
  violations,
  workingFragment,
} from './editorState.js';
import { buildDocument, canBuild, emptyForm, formErrors, SentenceForm } from './sentenceBuilder.js';
import { parseSceneMeta } from './x3dMeta.js';

declare const x3dom: { reload(): void } | undefined;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    if (k === 'class') node.className = v;
    else node.setAttribute(k, v);
  }
  node.append(...children);
  return node;
}

export class StudioApp {
  private api: StudioApi;
  private session: EditorSession | null = null;
  private sentenceForm: SentenceForm = emptyForm();
  private previewSession = `studio-${Date.now()}`;
  private signs: SignSummary[] = [];

  private signList: HTMLElement;
  private editor: HTMLElement;
  private sentencePanel: HTMLElement;
  private preview: HTMLElement;
  private scrub: HTMLElement;
  private status: HTMLElement;

  constructor(private root: HTMLElement, baseUrl: string) {
    this.api = new StudioApi(baseUrl);
    this.signList = el('div', { class: 'sign-list' });
    this.editor = el('div', { class: 'editor' });
    this.sentencePanel = el('div', { class: 'sentence' });
    this.preview = el('div', { class: 'preview-scene', id: 'preview-scene' });
    this.scrub = el('div', { class: 'scrub' });
    this.status = el('div', { class: 'status' });

    root.append(
      el('div', { class: 'col col-signs' }, el('h2', {}, 'Signs'), this.signList),
      el('div', { class: 'col col-editor' }, el('h2', {}, 'Sign editor'), this.editor),
      el(
        'div',
        { class: 'col col-preview' },
        el('h2', {}, 'Sentence & preview'),
        this.sentencePanel,
        this.preview,
        this.scrub,
        this.status,
      ),
    );
  }

  async start(): Promise<void> {
    const summary = await this.api.lexicon();
    this.setStatus(`lexicon ${summary.language}: ${summary.signs} signs, revision ${summary.revision}`);
    this.signs = await this.api.listSigns();
    this.renderSignList();
    this.renderSentenceForm();
    this.renderEditor();
  }

  private setStatus(text: string, isError = false): void {
    this.status.textContent = text;
    this.status.className = isError ? 'status error' : 'status';
  }

  private renderSignList(): void {
    this.signList.replaceChildren(
      ...this.signs.map((sign) => {
        const item = el(
          'button',
          { class: 'sign-item', type: 'button' },
          `${sign.gloss} (${sign.category}${sign.compound ? ', compound' : ''})`,
        );
        item.addEventListener('click', () => void this.openSign(sign.gloss));
        return item;
      }),
    );
  }

  private async openSign(gloss: string): Promise<void> {
    try {
      const fragment = await this.api.getSign(gloss);
      this.session = openSession(gloss, fragment.xml, fragment.revision);
      this.renderEditor();
    } catch (err) {
      this.setStatus(String(err), true);
    }
  }

  private renderDiagnostics(container: HTMLElement, diagnostics: Diagnostic[]): void {
    container.replaceChildren(
      ...diagnostics.map((d) => el('div', { class: 'diagnostic' }, `${d.severity}: ${d.message}`)),
    );
  }

  private renderEditor(): void {
    const session = this.session;
    if (!session) {
      this.editor.replaceChildren(el('p', { class: 'hint' }, 'Select a sign to edit.'));
      return;
    }
    const working = session.working;
    const inline = el('div', { class: 'diagnostics' });

    const header = el('h3', {}, `${session.gloss}${isDirty(session) ? ' *' : ''}`);

    const semantics = el('div', { class: 'row' });
    for (const field of ['lemma', 'frame', 'role'] as const) {
      const input = el('input', { value: working[field] ?? '', placeholder: field }) as HTMLInputElement;
      input.addEventListener('input', () => {
        working[field] = input.value === '' ? null : input.value;
        this.refreshEditorChrome(header, saveButton, problemsBox);
      });
      semantics.append(el('label', {}, `${field} `, input));
    }

    const syntax = el('div', { class: 'row' });
    const categorySelect = el('select') as HTMLSelectElement;
    for (const c of ['noun', 'verb', 'adjective', 'adverb', 'pronoun', 'classifier']) {
      categorySelect.append(el('option', c === working.category ? { selected: '' } : {}, c));
    }
    categorySelect.value = working.category;
    categorySelect.addEventListener('change', () => {
      working.category = categorySelect.value;
      this.refreshEditorChrome(header, saveButton, problemsBox);
    });
    const agreementSelect = el('select') as HTMLSelectElement;
    for (const a of ['none', 'subject', 'subject-object']) {
      agreementSelect.append(el('option', a === working.agreement ? { selected: '' } : {}, a));
    }
    agreementSelect.value = working.agreement;
    agreementSelect.addEventListener('change', () => {
      working.agreement = agreementSelect.value;
      this.refreshEditorChrome(header, saveButton, problemsBox);
    });
    syntax.append(el('label', {}, 'category ', categorySelect), el('label', {}, 'agreement ', agreementSelect));

    const channels = el('div', { class: 'channels' });
    if (working.compound.length > 0) {
      channels.append(el('p', {}, `compound of: ${working.compound.join(' + ')}`));
    }
    for (const channel of working.channels) {
      const table = el('table', { class: 'keys' });
      table.append(
        el(
          'tr',
          {},
          el('th', {}, 't (s)'),
          el('th', {}, 'yaw'),
          el('th', {}, 'pitch'),
          el('th', {}, 'roll'),
          el('th', {}, ''),
        ),
      );
      channel.keys.forEach((key, index) => {
        const row = el('tr');
        const tInput = el('input', { type: 'number', step: '0.05', value: String(key.t) }) as HTMLInputElement;
        tInput.addEventListener('change', () => {
          moveKey(session, channel.joint, index, Number(tInput.value));
          this.renderEditor();
        });
        row.append(el('td', {}, tInput));
        for (const part of ['yaw', 'pitch', 'roll'] as const) {
          const input = el('input', {
            type: 'number',
            step: '0.05',
            value: String(key[part]),
          }) as HTMLInputElement;
          input.addEventListener('change', () => {
            setKeyYpr(session, channel.joint, index, part, Number(input.value));
            this.refreshEditorChrome(header, saveButton, problemsBox);
          });
          row.append(el('td', {}, input));
        }
        const remove = el('button', { type: 'button' }, 'x');
        remove.addEventListener('click', () => {
          deleteKey(session, channel.joint, index);
          this.renderEditor();
        });
        row.append(el('td', {}, remove));
        table.append(row);
      });
      const addButton = el('button', { type: 'button' }, '+ key');
      addButton.addEventListener('click', () => {
        addKey(session, channel.joint, duration(working) + 0.2);
        this.renderEditor();
      });
      channels.append(el('h4', {}, channel.joint), table, addButton);
    }

    const problemsBox = el('div', { class: 'violations' });

    const saveButton = el('button', { type: 'button', class: 'save' }, 'Save') as HTMLButtonElement;
    saveButton.addEventListener('click', async () => {
      try {
        const result = await this.api.putSign(session.gloss, workingFragment(session), session.revision);
        if (result.ok) {
          committed(session, result.revision);
          this.setStatus(`saved ${session.gloss}, revision ${result.revision}`);
          this.renderEditor();
        } else if (result.status === 409) {
          inline.replaceChildren(
            el('div', { class: 'conflict' }, 'Lexicon changed on the server. Reload this sign to continue.'),
          );
        } else {
          this.renderDiagnostics(inline, result.diagnostics);
        }
      } catch (err) {
        this.setStatus(String(err), true);
      }
    });

    const previewButton = el('button', { type: 'button' }, 'Preview sign');
    previewButton.addEventListener('click', async () => {
      try {
        this.showScene(await this.api.compile([session.gloss]));
      } catch (err) {
        this.setStatus(String(err), true);
      }
    });

    this.editor.replaceChildren(header, semantics, syntax, channels, problemsBox, inline, saveButton, previewButton);
    this.refreshEditorChrome(header, saveButton, problemsBox);
  }

  private refreshEditorChrome(header: HTMLElement, saveButton: HTMLButtonElement, problemsBox: HTMLElement): void {
    const session = this.session;
    if (!session) return;
    header.textContent = `${session.gloss}${isDirty(session) ? ' *' : ''}`;
    const problems = violations(session);
    problemsBox.replaceChildren(
      ...problems.map((v) => el('div', { class: 'violation' }, `${v.channel}: ${v.message}`)),
    );
    saveButton.disabled = !canSave(session);
  }

  private renderSentenceForm(): void {
    const form = this.sentenceForm;
    const frameInput = el('input', { value: form.frame, placeholder: 'frame (e.g. Assistance)' }) as HTMLInputElement;
    frameInput.addEventListener('input', () => {
      form.frame = frameInput.value;
      refresh();
    });

    const rows = el('div', { class: 'rows' });
    const errorsBox = el('div', { class: 'violations' });
    const sessionInput = el('input', { value: this.previewSession }) as HTMLInputElement;
    sessionInput.addEventListener('input', () => {
      this.previewSession = sessionInput.value;
    });

    const renderRows = () => {
      rows.replaceChildren(
        ...form.rows.map((row, i) => {
          const line = el('div', { class: 'row' });
          for (const field of ['role', 'lemma', 'id'] as const) {
            const input = el('input', { value: row[field], placeholder: field }) as HTMLInputElement;
            input.addEventListener('input', () => {
              row[field] = input.value;
              refresh();
            });
            line.append(input);
          }
          const remove = el('button', { type: 'button' }, 'x');
          remove.addEventListener('click', () => {
            form.rows.splice(i, 1);
            renderRows();
            refresh();
          });
          line.append(remove);
          return line;
        }),
      );
    };

    const addRow = el('button', { type: 'button' }, '+ role');
    addRow.addEventListener('click', () => {
      form.rows.push({ role: '', lemma: '', id: `r${form.rows.length + 1}` });
      renderRows();
      refresh();
    });

    const tenseSelect = el('select') as HTMLSelectElement;
    for (const t of ['none', 'past', 'present', 'future']) tenseSelect.append(el('option', {}, t));
    tenseSelect.value = form.tense;
    tenseSelect.addEventListener('change', () => {
      form.tense = tenseSelect.value as SentenceForm['tense'];
    });
    const polaritySelect = el('select') as HTMLSelectElement;
    for (const p of ['affirmative', 'negative']) polaritySelect.append(el('option', {}, p));
    polaritySelect.value = form.polarity;
    polaritySelect.addEventListener('change', () => {
      form.polarity = polaritySelect.value as SentenceForm['polarity'];
    });

    const previewButton = el('button', { type: 'button', class: 'save' }, 'Preview sentence') as HTMLButtonElement;
    previewButton.addEventListener('click', async () => {
      try {
        const document_: SentenceDocument = buildDocument(form);
        const result = await this.api.translate(this.previewSession, [document_]);
        this.showScene(result.body);
        const loci = Object.entries(result.loci)
          .map(([id, p]) => `${id} @ (${p.map((v) => v.toFixed(3)).join(', ')})`)
          .join('; ');
        this.setStatus(loci ? `loci: ${loci}` : 'no referents placed');
      } catch (err) {
        this.setStatus(String(err), true);
      }
    });

    const refresh = () => {
      const errors = formErrors(form);
      errorsBox.replaceChildren(
        ...errors.map((e) => el('div', { class: 'violation' }, `${e.field}: ${e.message}`)),
      );
      previewButton.disabled = !canBuild(form);
    };

    renderRows();
    refresh();
    this.sentencePanel.replaceChildren(
      el('div', { class: 'row' }, el('label', {}, 'frame ', frameInput)),
      rows,
      addRow,
      el(
        'div',
        { class: 'row' },
        el('label', {}, 'tense ', tenseSelect),
        el('label', {}, 'polarity ', polaritySelect),
        el('label', {}, 'session ', sessionInput),
      ),
      errorsBox,
      previewButton,
    );
  }

  /** Replace the preview with a new scene and rebuild the scrub bar. */
  private showScene(x3dText: string): void {
    const meta = parseSceneMeta(x3dText);
    this.preview.innerHTML = x3dText.replace(/^<\?xml[^>]*\?>\s*/, '');
    if (typeof x3dom !== 'undefined') x3dom.reload();

    const bar = el('div', { class: 'scrub-bar' });
    for (const marker of meta.markers) {
      const left = meta.cycleInterval > 0 ? (marker.time / meta.cycleInterval) * 100 : 0;
      bar.append(
        el('span', { class: 'marker', style: `left: ${left}%`, title: `${marker.gloss} @ ${marker.time}s` }, '|'),
      );
    }
    const play = el('button', { type: 'button' }, 'Play');
    play.addEventListener('click', () => this.driveTimeSensor('play'));
    const pause = el('button', { type: 'button' }, 'Pause');
    pause.addEventListener('click', () => this.driveTimeSensor('pause'));
    const slider = el('input', { type: 'range', min: '0', max: '100', value: '0' }) as HTMLInputElement;
    slider.addEventListener('input', () => {
      const t = (Number(slider.value) / 100) * meta.cycleInterval;
      this.driveTimeSensor('seek', t);
    });
    this.scrub.replaceChildren(play, pause, slider, bar);
  }

  private driveTimeSensor(action: 'play' | 'pause' | 'seek', t = 0): void {
    const sensor = this.preview.querySelector('TimeSensor, timeSensor, timesensor');
    if (!sensor) return;
    const now = Date.now() / 1000;
    if (action === 'play') {
      sensor.setAttribute('stopTime', '0');
      sensor.setAttribute('startTime', String(now));
    } else if (action === 'pause') {
      sensor.setAttribute('stopTime', String(now));
    } else {
      sensor.setAttribute('stopTime', '0');
      sensor.setAttribute('startTime', String(now - t));
    }
  }
}

export function mountStudio(root: HTMLElement, baseUrl: string): StudioApp {
  const app = new StudioApp(root, baseUrl);
  void app.start().catch((err) => {
    root.append(el('p', { class: 'error' }, `Cannot reach the service at ${baseUrl}: ${err}`));
  });
  return app;
}
