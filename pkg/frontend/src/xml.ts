/**
 * Minimal XML element reader for the service's machine-generated documents
 * (sign fragments and X3D scenes). Handles elements, attributes, text,
 * self-closing tags, the five standard entities, comments, and the XML
 * declaration -- no namespaces, CDATA, or doctypes, which the service
 * never emits. Works identically in the browser and in node tests.
 */

export interface XmlElement {
  tag: string;
  attrs: Record<string, string>;
  children: XmlElement[];
  text: string;
}

const ENTITIES: Record<string, string> = {
  '&amp;': '&',
  '&lt;': '<',
  '&gt;': '>',
  '&quot;': '"',
  '&apos;': "'",
};

export function decodeEntities(value: string): string {
  return value.replace(/&(amp|lt|gt|quot|apos);|&#x([0-9a-fA-F]+);|&#(\d+);/g, (m, named, hex, dec) => {
    if (named) return ENTITIES[`&${named};`];
    if (hex) return String.fromCodePoint(parseInt(hex, 16));
    return String.fromCodePoint(parseInt(dec, 10));
  });
}

export function encodeAttribute(value: string): string {
  return value
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

class Reader {
  pos = 0;
  constructor(readonly text: string) {}

  error(message: string): never {
    throw new Error(`XML parse error at offset ${this.pos}: ${message}`);
  }

  skipWhitespace(): void {
    while (this.pos < this.text.length && /\s/.test(this.text[this.pos])) this.pos++;
  }

  skipProlog(): void {
    for (;;) {
      this.skipWhitespace();
      if (this.text.startsWith('<?', this.pos)) {
        const end = this.text.indexOf('?>', this.pos);
        if (end < 0) this.error('unterminated processing instruction');
        this.pos = end + 2;
      } else if (this.text.startsWith('<!--', this.pos)) {
        const end = this.text.indexOf('-->', this.pos);
        if (end < 0) this.error('unterminated comment');
        this.pos = end + 3;
      } else {
        return;
      }
    }
  }

  parseName(): string {
    const start = this.pos;
    while (this.pos < this.text.length && /[^\s=/>]/.test(this.text[this.pos])) this.pos++;
    if (this.pos === start) this.error('expected a name');
    return this.text.slice(start, this.pos);
  }

  parseAttributes(): Record<string, string> {
    const attrs: Record<string, string> = {};
    for (;;) {
      this.skipWhitespace();
      const ch = this.text[this.pos];
      if (ch === '/' || ch === '>' || ch === undefined) return attrs;
      const name = this.parseName();
      this.skipWhitespace();
      if (this.text[this.pos] !== '=') this.error(`attribute ${name} missing '='`);
      this.pos++;
      this.skipWhitespace();
      const quote = this.text[this.pos];
      if (quote !== '"' && quote !== "'") this.error(`attribute ${name} missing quote`);
      this.pos++;
      const end = this.text.indexOf(quote, this.pos);
      if (end < 0) this.error(`attribute ${name} unterminated`);
      attrs[name] = decodeEntities(this.text.slice(this.pos, end));
      this.pos = end + 1;
    }
  }

  parseElement(): XmlElement {
    if (this.text[this.pos] !== '<') this.error('expected an element');
    this.pos++;
    const tag = this.parseName();
    const attrs = this.parseAttributes();
    const element: XmlElement = { tag, attrs, children: [], text: '' };
    if (this.text.startsWith('/>', this.pos)) {
      this.pos += 2;
      return element;
    }
    if (this.text[this.pos] !== '>') this.error(`tag ${tag} not closed`);
    this.pos++;
    for (;;) {
      const next = this.text.indexOf('<', this.pos);
      if (next < 0) this.error(`missing closing tag for ${tag}`);
      element.text += decodeEntities(this.text.slice(this.pos, next));
      this.pos = next;
      if (this.text.startsWith('</', this.pos)) {
        this.pos += 2;
        const closing = this.parseName();
        if (closing !== tag) this.error(`mismatched closing tag ${closing} for ${tag}`);
        this.skipWhitespace();
        if (this.text[this.pos] !== '>') this.error('malformed closing tag');
        this.pos++;
        return element;
      }
      if (this.text.startsWith('<!--', this.pos)) {
        const end = this.text.indexOf('-->', this.pos);
        if (end < 0) this.error('unterminated comment');
        this.pos = end + 3;
        continue;
      }
      element.children.push(this.parseElement());
    }
  }
}

export function parseXml(text: string): XmlElement {
  const reader = new Reader(text);
  reader.skipProlog();
  const root = reader.parseElement();
  reader.skipProlog();
  if (reader.pos < text.length && text.slice(reader.pos).trim() !== '') {
    reader.error('trailing content after the root element');
  }
  return root;
}

export function childrenOf(element: XmlElement, tag: string): XmlElement[] {
  return element.children.filter((c) => c.tag === tag);
}

export function firstChild(element: XmlElement, tag: string): XmlElement | undefined {
  return element.children.find((c) => c.tag === tag);
}

/** Depth-first search over the whole subtree. */
export function descendants(element: XmlElement, tag: string): XmlElement[] {
  const out: XmlElement[] = [];
  const stack = [element];
  while (stack.length) {
    const node = stack.pop()!;
    if (node.tag === tag) out.push(node);
    for (let i = node.children.length - 1; i >= 0; i--) stack.push(node.children[i]);
  }
  return out;
}
