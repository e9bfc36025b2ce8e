"""Deterministic X3D scene emission for compiled animation documents.

The emitted document is X3D 3.3 (XML encoding, Immersive profile with the
H-Anim component): one humanoid built from the full joint hierarchy, one
time sensor, and one orientation interpolator per animated joint routed to
that joint. Output is a pure function of (document, options): fixed element
order, fixed attribute order, six-digit fixed-point numbers, "\\n" line
endings, so golden-file comparisons are byte-stable.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .compiler import AnimationDocument
from .errors import InvalidArgumentError
from .rotation import quaternion_to_axis_angle
from .skeleton import JOINT_CENTERS, children_of, neutral_posture

PRECISION = 6
DEFAULT_RENDERER_SCRIPT = "https://www.x3dom.org/download/x3dom.js"


@dataclass(frozen=True)
class EmissionOptions:
    humanoid_def_name: str = "Signer"
    loop: bool = False
    cycle_padding: float = 0.5  # seconds appended after the last key
    html_wrapper: bool = False
    renderer_script_url: str = DEFAULT_RENDERER_SCRIPT

    def __post_init__(self):
        if self.cycle_padding < 0.0:
            raise InvalidArgumentError("cycle padding must be >= 0")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.humanoid_def_name):
            raise InvalidArgumentError(
                f"humanoid DEF name {self.humanoid_def_name!r} must be a simple identifier"
            )


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.{PRECISION}f}"


def _fmt_vec(v) -> str:
    return " ".join(_fmt(c) for c in v)


def _fmt_rotation(q) -> str:
    aa = quaternion_to_axis_angle(q)
    return f"{_fmt_vec(aa.axis)} {_fmt(aa.angle)}"


def _attr(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def _emit_joint(
    joint: str,
    doc: AnimationDocument,
    opts: EmissionOptions,
    static_pose,
    lines: list[str],
    depth: int,
) -> None:
    pad = "  " * depth
    name = opts.humanoid_def_name
    center = JOINT_CENTERS[joint]
    keys = doc.tracks.get(joint)
    rotation = keys[0].rotation if keys else static_pose.rotation_of(joint)
    field = ' containerField="skeleton"' if depth == 3 else ""
    lines.append(
        f'{pad}<HAnimJoint{field} DEF="{name}_{joint}" name="{joint}" '
        f'center="{_fmt_vec(center)}" rotation="{_fmt_rotation(rotation)}">'
    )
    kids = sorted(children_of(joint))
    lines.append(f'{pad}  <HAnimSegment DEF="{name}_{joint}_segment" name="{joint}_segment">')
    lines.append(f'{pad}    <Transform translation="{_fmt_vec(center)}">')
    lines.append(f"{pad}      <Shape>")
    lines.append(f"{pad}        <Appearance>")
    lines.append(f'{pad}          <Material diffuseColor="0.85 0.8 0.7"/>')
    lines.append(f"{pad}        </Appearance>")
    lines.append(f'{pad}        <Sphere radius="0.012000"/>')
    lines.append(f"{pad}      </Shape>")
    lines.append(f"{pad}    </Transform>")
    for child in kids:
        points = f"{_fmt_vec(center)} {_fmt_vec(JOINT_CENTERS[child])}"
        lines.append(f"{pad}    <Shape>")
        lines.append(f"{pad}      <Appearance>")
        lines.append(f'{pad}        <Material emissiveColor="0.3 0.5 0.8"/>')
        lines.append(f"{pad}      </Appearance>")
        lines.append(f'{pad}      <LineSet vertexCount="2">')
        lines.append(f'{pad}        <Coordinate point="{points}"/>')
        lines.append(f"{pad}      </LineSet>")
        lines.append(f"{pad}    </Shape>")
    lines.append(f"{pad}  </HAnimSegment>")
    for child in kids:
        _emit_joint(child, doc, opts, static_pose, lines, depth + 1)
    lines.append(f"{pad}</HAnimJoint>")


def _emit_metadata(doc: AnimationDocument, lines: list[str]) -> None:
    if not doc.markers and not doc.nonmanual:
        return
    lines.append('      <MetadataSet containerField="metadata" name="signforge">')
    if doc.markers:
        lines.append('        <MetadataSet containerField="value" name="boundaries">')
        for m in doc.markers:
            lines.append(
                f'          <MetadataDouble containerField="value" name="{_attr(m.gloss)}" '
                f'value="{_fmt(m.time)}"/>'
            )
        lines.append("        </MetadataSet>")
    if doc.nonmanual:
        lines.append('        <MetadataSet containerField="value" name="nonmanual">')
        for cue in doc.nonmanual:
            lines.append(
                f'          <MetadataString containerField="value" name="{cue.cue}" '
                f"value='\"{_fmt(cue.time)} {_fmt(cue.intensity)}\"'/>"
            )
        lines.append("        </MetadataSet>")
    lines.append("      </MetadataSet>")


def emit_x3d(doc: AnimationDocument, opts: EmissionOptions = EmissionOptions()) -> str:
    """Emit a complete X3D document; an empty document yields a static scene."""
    name = opts.humanoid_def_name
    animated = sorted(j for j, keys in doc.tracks.items() if keys)
    cycle = doc.duration + opts.cycle_padding
    rest = neutral_posture()

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<X3D profile="Immersive" version="3.3">',
        "  <head>",
        '    <component name="H-Anim" level="1"/>',
        '    <meta name="generator" content="signforge"/>',
        "  </head>",
        "  <Scene>",
        '    <Viewpoint position="0.000000 1.300000 2.400000" description="front"/>',
        f'    <HAnimHumanoid DEF="{name}" name="{name}" version="2.0">',
    ]
    _emit_metadata(doc, lines)
    _emit_joint("HumanoidRoot", doc, opts, rest, lines, 3)
    lines.append("    </HAnimHumanoid>")

    if animated:
        loop = "true" if opts.loop else "false"
        lines.append(
            f'    <TimeSensor DEF="{name}_clock" cycleInterval="{_fmt(cycle)}" loop="{loop}"/>'
        )
        for joint in animated:
            keys = doc.tracks[joint]
            key_attr = " ".join(_fmt(k.time / cycle) for k in keys)
            value_attr = " ".join(_fmt_rotation(k.rotation) for k in keys)
            lines.append(
                f'    <OrientationInterpolator DEF="{name}_{joint}_rot" '
                f'key="{key_attr}" keyValue="{value_attr}"/>'
            )
        for joint in animated:
            lines.append(
                f'    <ROUTE fromNode="{name}_clock" fromField="fraction_changed" '
                f'toNode="{name}_{joint}_rot" toField="set_fraction"/>'
            )
            lines.append(
                f'    <ROUTE fromNode="{name}_{joint}_rot" fromField="value_changed" '
                f'toNode="{name}_{joint}" toField="set_rotation"/>'
            )
    lines.append("  </Scene>")
    lines.append("</X3D>")
    return "\n".join(lines) + "\n"


def validate_emission(xml_text: str) -> list[str]:
    """Structural self-check of an emitted scene; empty list means clean."""
    problems: list[str] = []
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        return [f"malformed XML: {exc}"]

    defs: set[str] = set()
    for elem in root.iter():
        d = elem.get("DEF")
        if d is not None:
            if d in defs:
                problems.append(f"duplicate DEF {d!r}")
            defs.add(d)

    for route in root.iter("ROUTE"):
        for attr in ("fromNode", "toNode"):
            target = route.get(attr)
            if target is None:
                problems.append(f"ROUTE missing {attr}")
            elif target not in defs:
                problems.append(f"ROUTE {attr} references undeclared DEF {target!r}")
        for attr in ("fromField", "toField"):
            if route.get(attr) is None:
                problems.append(f"ROUTE missing {attr}")

    for interp in root.iter("OrientationInterpolator"):
        d = interp.get("DEF", "<anonymous>")
        keys = (interp.get("key") or "").split()
        values = (interp.get("keyValue") or "").split()
        if len(values) % 4 != 0 or len(keys) * 4 != len(values):
            problems.append(
                f"interpolator {d}: {len(keys)} keys but {len(values)} keyValue floats"
            )
        try:
            numeric = [float(k) for k in keys]
        except ValueError:
            problems.append(f"interpolator {d}: non-numeric key")
            continue
        if any(k < 0.0 or k > 1.0 for k in numeric):
            problems.append(f"interpolator {d}: keys outside [0, 1]")
        if any(k1 < k0 for k0, k1 in zip(numeric, numeric[1:])):
            problems.append(f"interpolator {d}: keys decrease")
    return problems


_HTML_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8"/>
<title>{title}</title>
<script src="{script_url}"></script>
<style>
body {{ font-family: sans-serif; margin: 1rem; }}
#scene {{ width: 640px; height: 480px; border: 1px solid #ccc; }}
</style>
</head>
<body>
<h1>{title}</h1>
<p>
<button id="play">Play</button>
<button id="pause">Pause</button>
</p>
<div id="scene">
{x3d}</div>
<script>
var clock = document.querySelector('TimeSensor');
document.getElementById('play').addEventListener('click', function () {{
  if (clock) {{
    clock.setAttribute('stopTime', '0');
    clock.setAttribute('startTime', String(Date.now() / 1000));
  }}
}});
document.getElementById('pause').addEventListener('click', function () {{
  if (clock) {{
    clock.setAttribute('stopTime', String(Date.now() / 1000));
  }}
}});
</script>
</body>
</html>
"""


def emit_html(doc: AnimationDocument, opts: EmissionOptions = EmissionOptions()) -> str:
    """Single-file player page embedding the X3D scene byte-for-byte."""
    return _HTML_TEMPLATE.format(
        title=f"{opts.humanoid_def_name} animation",
        script_url=opts.renderer_script_url,
        x3d=emit_x3d(doc, opts),
    )
