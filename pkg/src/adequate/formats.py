"""Line-oriented text files for element lists and adequate sets.

    carrier <spec>            real | padic p=<p> N=<N> | gf{p=..;k=..;mod=[..]}
    distinguished <i>         optional, 1-based, defaults to 1
    x<i> <literal>            one value per line
    system                    optional; the extracted relation block follows

Serialization always writes the distinguished value first, so a written set
re-reads to the same structure and re-serializes byte for byte.
"""

from __future__ import annotations

import re

from .carriers import Carrier, parse_carrier
from .constraints import (AdequateSet, ConstraintError, format_system, make_set,
                          parse_system)


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str = "<input>"):
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")
        self.line, self.column = line, column


_ELEM_RE = re.compile(r"^(\s*x(\d+)\s+)(.*?)\s*$")


def format_set(A: AdequateSet, with_system: bool = True) -> str:
    C = A.carrier
    lines = [f"carrier {C.header()}", "distinguished 1"]
    lines += [f"x{i} {C.format(v)}" for i, v in enumerate(A.elements, 1)]
    out = "\n".join(lines) + "\n"
    if with_system:
        out += "system\n" + format_system(A.system)
    return out


def parse_set(text: str, source: str = "<input>", check_system: bool = True) -> AdequateSet:
    carrier: Carrier | None = None
    distinguished = 1
    values: list = []
    system_text = None
    lines = text.splitlines()
    for ln, raw in enumerate(lines, 1):
        line = "" if raw.lstrip().startswith("#") else raw
        if not line.strip():
            continue
        head = line.split()[0]
        col = len(line) - len(line.lstrip()) + 1
        if head == "carrier":
            if carrier is not None:
                raise FormatError("repeated carrier line", ln, col, source)
            spec = line.strip()[len("carrier"):].strip()
            try:
                carrier = parse_carrier(spec)
            except ValueError as e:
                raise FormatError(str(e), ln, line.index(spec) + 1 if spec else col, source) from None
        elif head == "distinguished":
            try:
                distinguished = int(line.split()[1])
            except (IndexError, ValueError):
                raise FormatError("distinguished needs an integer", ln, col, source) from None
        elif head == "system":
            system_text = "\n".join(lines[ln:])
            sys_start = ln + 1
            break
        else:
            m = _ELEM_RE.match(line)
            if not m:
                raise FormatError(f"unexpected line {raw.strip()!r}", ln, col, source)
            if carrier is None:
                raise FormatError("element before carrier line", ln, col, source)
            if int(m.group(2)) != len(values) + 1:
                raise FormatError(f"expected x{len(values) + 1}", ln, col, source)
            try:
                values.append(carrier.parse(m.group(3)))
            except (ValueError, ArithmeticError) as e:
                raise FormatError(str(e), ln, len(m.group(1)) + 1, source) from None
    if carrier is None:
        raise FormatError("missing carrier line", source=source)
    if not values:
        raise FormatError("no elements", source=source)
    try:
        A = make_set(values, distinguished, carrier)
    except ConstraintError as e:
        raise FormatError(str(e), source=source) from None
    if system_text is not None and check_system:
        try:
            S = parse_system(system_text, sys_start)
        except ConstraintError as e:
            raise FormatError(str(e), source=source) from None
        if distinguished == 1 and S != A.system:
            raise FormatError("system block does not match the relations of the elements",
                              sys_start - 1, 1, source)
    return A
