/**
 * Typed client for the signforge service. Every request in the studio goes
 * through this module; the endpoint set mirrors the service documentation
 * exactly and nothing else is called.
 */

export interface LexiconSummary {
  language: string;
  signs: number;
  revision: number;
}

export interface SignSummary {
  gloss: string;
  category: string;
  agreement: string;
  lemma: string | null;
  frame: string | null;
  compound: boolean;
}

export interface Diagnostic {
  severity: string;
  gloss: string | null;
  message: string;
}

export interface SignFragment {
  xml: string;
  revision: string;
}

export type PutResult =
  | { ok: true; revision: string }
  | { ok: false; status: number; diagnostics: Diagnostic[] };

export interface SentenceDocument {
  frame: string;
  elements: Record<string, { lemma: string; id: string }>;
  tense?: string;
  polarity?: string;
}

export interface TranslateResult {
  body: string;
  contentType: string;
  loci: Record<string, [number, number, number]>;
}

async function diagnosticsOf(response: Response): Promise<Diagnostic[]> {
  try {
    const data = await response.json();
    if (Array.isArray(data.diagnostics)) return data.diagnostics;
  } catch {
    /* non-JSON error body */
  }
  return [{ severity: 'error', gloss: null, message: `HTTP ${response.status}` }];
}

export class StudioApi {
  constructor(readonly baseUrl: string, private fetchFn: typeof fetch = fetch) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, '') + path;
  }

  async lexicon(): Promise<LexiconSummary> {
    const r = await this.fetchFn(this.url('/lexicon'));
    if (!r.ok) throw new Error(`GET /lexicon failed: ${r.status}`);
    return r.json();
  }

  async listSigns(): Promise<SignSummary[]> {
    const r = await this.fetchFn(this.url('/signs'));
    if (!r.ok) throw new Error(`GET /signs failed: ${r.status}`);
    return r.json();
  }

  async getSign(gloss: string): Promise<SignFragment> {
    const r = await this.fetchFn(this.url(`/signs/${encodeURIComponent(gloss)}`));
    if (!r.ok) throw new Error(`GET /signs/${gloss} failed: ${r.status}`);
    return { xml: await r.text(), revision: r.headers.get('ETag') ?? '' };
  }

  async putSign(gloss: string, xml: string, revision: string): Promise<PutResult> {
    const r = await this.fetchFn(this.url(`/signs/${encodeURIComponent(gloss)}`), {
      method: 'PUT',
      headers: { 'Content-Type': 'application/xml', 'If-Match': revision },
      body: xml,
    });
    if (r.ok) {
      const data = await r.json();
      return { ok: true, revision: `"${data.revision}"` };
    }
    return { ok: false, status: r.status, diagnostics: await diagnosticsOf(r) };
  }

  async deleteSign(gloss: string, revision: string): Promise<PutResult> {
    const r = await this.fetchFn(this.url(`/signs/${encodeURIComponent(gloss)}`), {
      method: 'DELETE',
      headers: { 'If-Match': revision },
    });
    if (r.ok) {
      const data = await r.json();
      return { ok: true, revision: `"${data.revision}"` };
    }
    return { ok: false, status: r.status, diagnostics: await diagnosticsOf(r) };
  }

  async alphabet(): Promise<Record<string, string>> {
    const r = await this.fetchFn(this.url('/alphabet'));
    if (!r.ok) throw new Error(`GET /alphabet failed: ${r.status}`);
    return r.json();
  }

  async handshapes(): Promise<Record<string, Record<string, [number, number, number]>>> {
    const r = await this.fetchFn(this.url('/handshapes'));
    if (!r.ok) throw new Error(`GET /handshapes failed: ${r.status}`);
    return r.json();
  }

  async compile(glosses: string[]): Promise<string> {
    const r = await this.fetchFn(this.url('/compile'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ signs: glosses }),
    });
    if (!r.ok) {
      const diags = await diagnosticsOf(r);
      throw new Error(diags.map((d) => d.message).join('; '));
    }
    return r.text();
  }

  async translate(
    session: string,
    sentences: SentenceDocument[],
    html = false,
  ): Promise<TranslateResult> {
    const r = await this.fetchFn(this.url('/translate'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ session, sentences, html }),
    });
    if (!r.ok) {
      const diags = await diagnosticsOf(r);
      throw new Error(diags.map((d) => d.message).join('; '));
    }
    return {
      body: await r.text(),
      contentType: r.headers.get('Content-Type') ?? '',
      loci: JSON.parse(r.headers.get('X-Loci') ?? '{}'),
    };
  }

  async fingerspell(word: string): Promise<string> {
    const r = await this.fetchFn(this.url('/fingerspell'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ word }),
    });
    if (!r.ok) {
      const diags = await diagnosticsOf(r);
      throw new Error(diags.map((d) => d.message).join('; '));
    }
    return r.text();
  }
}
