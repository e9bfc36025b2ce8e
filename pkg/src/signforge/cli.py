"""Command-line entry points for the animation compiler.

Exit codes: 0 success, 1 domain error (validation, planning, missing
files), 2 usage error. The lexicon path resolves in this order: the
SIGNFORGE_LEXICON environment variable, the --lexicon flag, then the
"lexicon" key of the TOML config file given by --config.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .compiler import TransitionPolicy, concatenate
from .errors import SignforgeError
from .lexicon import Lexicon, parse_lexicon, validate_lexicon
from .planner import citation_item, compile_plan_item, fingerspell, parse_interlingua_many, translate_many
from .x3d import EmissionOptions, emit_html, emit_x3d

LEXICON_ENV_VAR = "SIGNFORGE_LEXICON"


class CliError(SignforgeError):
    pass


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    p = Path(path)
    if not p.is_file():
        raise CliError(f"config file not found: {path}")
    with p.open("rb") as fh:
        return tomllib.load(fh)


def _setting(args: argparse.Namespace, config: dict, name: str, default=None):
    value = getattr(args, name, None)
    if value is None:
        value = config.get(name, default)
    return value


def _resolve_lexicon_path(args: argparse.Namespace, config: dict) -> str:
    path = os.environ.get(LEXICON_ENV_VAR) or _setting(args, config, "lexicon")
    if not path:
        raise CliError(f"no lexicon given (use --lexicon, config, or ${LEXICON_ENV_VAR})")
    return path


def _load_lexicon(path: str) -> Lexicon:
    p = Path(path)
    if not p.is_file():
        raise CliError(f"lexicon file not found: {path}")
    return parse_lexicon(p.read_text("utf-8"))


def _emission_options(config: dict) -> EmissionOptions:
    opts = EmissionOptions()
    overrides = {
        key: config[key]
        for key in ("humanoid_def_name", "loop", "cycle_padding", "renderer_script_url")
        if key in config
    }
    if overrides:
        from dataclasses import replace

        opts = replace(opts, **overrides)
    return opts


def _write_output(path: str, content: str) -> None:
    Path(path).write_text(content, encoding="utf-8")
    print(f"wrote {path}")


def cmd_validate(args: argparse.Namespace, config: dict) -> int:
    p = Path(args.lexicon_file)
    if not p.is_file():
        raise CliError(f"lexicon file not found: {args.lexicon_file}")
    from .errors import LexiconParseError, LexiconValidationError

    try:
        lexicon = parse_lexicon(p.read_text("utf-8"))
    except LexiconParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LexiconValidationError as exc:
        for diag in exc.diagnostics:
            print(str(diag), file=sys.stderr)
        return 1
    for diag in validate_lexicon(lexicon):
        print(str(diag), file=sys.stderr)
    return 0


def cmd_compile(args: argparse.Namespace, config: dict) -> int:
    lexicon = _load_lexicon(_resolve_lexicon_path(args, config))
    glosses = [g for g in (_setting(args, config, "signs") or "").split(",") if g]
    if not glosses:
        raise CliError("no signs given (--signs G1,G2,...)")
    out = _setting(args, config, "out")
    if not out:
        raise CliError("no output file given (--out)")
    policy = TransitionPolicy()
    docs = []
    for gloss in glosses:
        entry = lexicon.signs.get(gloss)
        if entry is None:
            raise CliError(f"unknown gloss {gloss!r}")
        docs.extend(compile_plan_item(citation_item(entry), lexicon, policy))
    _write_output(out, emit_x3d(concatenate(docs, policy), _emission_options(config)))
    return 0


def cmd_translate(args: argparse.Namespace, config: dict) -> int:
    lexicon = _load_lexicon(_resolve_lexicon_path(args, config))
    in_path = _setting(args, config, "input")
    if not in_path:
        raise CliError("no input file given (--in sentences.json)")
    p = Path(in_path)
    if not p.is_file():
        raise CliError(f"input file not found: {in_path}")
    out = _setting(args, config, "out")
    if not out:
        raise CliError("no output file given (--out)")
    sentences = parse_interlingua_many(p.read_text("utf-8"))
    doc, _ = translate_many(sentences, lexicon)
    options = _emission_options(config)
    html = bool(getattr(args, "html", False) or config.get("html", False))
    _write_output(out, emit_html(doc, options) if html else emit_x3d(doc, options))
    return 0


def cmd_fingerspell(args: argparse.Namespace, config: dict) -> int:
    lexicon = _load_lexicon(_resolve_lexicon_path(args, config))
    word = _setting(args, config, "word")
    if not word:
        raise CliError("no word given (--word)")
    out = _setting(args, config, "out")
    if not out:
        raise CliError("no output file given (--out)")
    policy = TransitionPolicy()
    docs = compile_plan_item(fingerspell(word, lexicon), lexicon, policy)
    _write_output(out, emit_x3d(concatenate(docs, policy), _emission_options(config)))
    return 0


def cmd_serve(args: argparse.Namespace, config: dict) -> int:
    import uvicorn

    from .service import create_app

    path = _resolve_lexicon_path(args, config)
    if not Path(path).is_file():
        raise CliError(f"lexicon file not found: {path}")
    port = int(_setting(args, config, "port", 8030))
    host = str(_setting(args, config, "host", "127.0.0.1"))
    app = create_app(path, options=_emission_options(config))
    print(f"serving lexicon {path} on http://{host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signforge",
        description="Compile sign lexica and sentence documents to X3D animation scenes.",
    )
    parser.add_argument("--config", help="TOML config file supplying defaults for flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a lexicon file")
    p.add_argument("lexicon_file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compile", help="compile a comma-separated sign sequence")
    p.add_argument("--lexicon")
    p.add_argument("--signs", help="comma-separated glosses")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("translate", help="translate sentence documents")
    p.add_argument("--lexicon")
    p.add_argument("--in", dest="input", help="sentences JSON file")
    p.add_argument("--out")
    p.add_argument("--html", action="store_true", help="emit an HTML player page")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("fingerspell", help="fingerspell a word")
    p.add_argument("--lexicon")
    p.add_argument("--word")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fingerspell)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--lexicon")
    p.add_argument("--port", type=int)
    p.add_argument("--host")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except SignforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
