/**
 * Sentence form state: frame + role/lemma/discourse-id rows, validated
 * into the service's sentence-document JSON. Invalid forms cannot build.
 */

import { SentenceDocument } from './api.js';

export const TENSES = ['none', 'past', 'present', 'future'] as const;
export const POLARITIES = ['affirmative', 'negative'] as const;

export interface RoleRow {
  role: string;
  lemma: string;
  id: string;
}

export interface SentenceForm {
  frame: string;
  rows: RoleRow[];
  tense: (typeof TENSES)[number];
  polarity: (typeof POLARITIES)[number];
}

export function emptyForm(): SentenceForm {
  return { frame: '', rows: [], tense: 'none', polarity: 'affirmative' };
}

export interface FormError {
  field: string;
  message: string;
}

export function formErrors(form: SentenceForm): FormError[] {
  const errors: FormError[] = [];
  if (!form.frame.trim()) errors.push({ field: 'frame', message: 'frame is required' });
  const seen = new Set<string>();
  form.rows.forEach((row, i) => {
    const where = `rows[${i}]`;
    if (!row.role.trim()) errors.push({ field: `${where}.role`, message: 'role is required' });
    if (!row.lemma.trim()) errors.push({ field: `${where}.lemma`, message: 'lemma is required' });
    if (!row.id.trim()) errors.push({ field: `${where}.id`, message: 'discourse id is required' });
    if (row.role.trim()) {
      if (seen.has(row.role)) {
        errors.push({ field: `${where}.role`, message: `duplicate role ${row.role}` });
      }
      seen.add(row.role);
    }
  });
  return errors;
}

export function canBuild(form: SentenceForm): boolean {
  return formErrors(form).length === 0;
}

export function buildDocument(form: SentenceForm): SentenceDocument {
  const errors = formErrors(form);
  if (errors.length > 0) {
    throw new Error(errors.map((e) => `${e.field}: ${e.message}`).join('; '));
  }
  const elements: Record<string, { lemma: string; id: string }> = {};
  for (const row of form.rows) {
    elements[row.role] = { lemma: row.lemma, id: row.id };
  }
  return {
    frame: form.frame,
    elements,
    tense: form.tense,
    polarity: form.polarity,
  };
}
