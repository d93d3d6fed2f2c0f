"""Reader and writer for the extended FIS rule-base format and observation files.

A rule base file looks like::

    [System]
    Name='demo'
    Method='KH'
    NumInputs=1
    NumOutputs=1
    NumRules=2

    [Input1]
    Name='x'
    Range=[0 12]
    NumMFs=2
    MF1='A1':'trimf',[0 1 2]|[0 1 0]
    MF2='A2':'trimf',[8 9 10]|[0 1 0]

    [Output1]
    Name='y'
    Range=[0 32]
    NumMFs=2
    MF1='B1':'trimf',[20 21 22]|[0 1 0]
    MF2='B2':'trimf',[28 29 30]|[0 1 0]

    [Rules]
    1, 1 (1) : 1
    2, 2 (1) : 1

Each membership function lists its breakpoint abscissae (``params``) and,
after ``|``, their membership degrees (``paramsy``).  ``pwlmf`` accepts any
equal-length pair of vectors.  Observation files hold one
``OBS<k>=...`` line per input in the same notation.
"""
from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO

from .errors import (
    DimensionGap,
    FisSyntaxError,
    FuzzySetError,
    MissingSection,
    ParamsyLengthMismatch,
    ParamsyShapeMismatch,
    UnknownShapeCode,
)
from .rulebase import LinguisticPartition, Observation, Rule, RuleBase
from .sets import FuzzySet, make_set

CANONICAL_PARAMSY = {"trimf": (0.0, 1.0, 0.0), "trapmf": (0.0, 1.0, 1.0, 0.0), "singlmf": (1.0,)}
SHAPE_CODES = ("trimf", "trapmf", "singlmf", "pwlmf")


# numerals ---------------------------------------------------------------

def format_num(x: float) -> str:
    """Shortest text that reads back to the same float; integral values drop the point."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _vec(values: Iterable[float]) -> str:
    return "[" + " ".join(format_num(v) for v in values) + "]"


# scanner ------------------------------------------------------------------

class _Cursor:
    def __init__(self, text: str, line: int, offset: int = 0):
        self.text = text
        self.line = line
        self.pos = 0
        self.offset = offset

    @property
    def col(self) -> int:
        return self.pos + 1 + self.offset

    def fail(self, msg: str, exc=FisSyntaxError):
        raise exc(msg, self.line, self.col)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.ws()
        if self.peek() != ch:
            got = repr(self.peek()) if self.peek() else "end of line"
            self.fail(f"expected {ch!r}, found {got}")
        self.pos += 1

    def accept(self, ch: str) -> bool:
        self.ws()
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def quoted(self) -> str:
        self.expect("'")
        end = self.text.find("'", self.pos)
        if end < 0:
            self.fail("unterminated quoted string")
        out = self.text[self.pos:end]
        self.pos = end + 1
        return out

    def word(self) -> str:
        self.ws()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not m:
            self.fail("expected a name")
        self.pos = m.end()
        return m.group(0)

    def integer(self) -> int:
        self.ws()
        m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group(0))

    def number(self) -> float:
        self.ws()
        m = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?").match(self.text, self.pos)
        if not m:
            self.fail("expected a number")
        self.pos = m.end()
        return float(m.group(0))

    def vector(self) -> tuple[tuple[float, ...], int]:
        self.ws()
        start = self.col
        self.expect("[")
        out = []
        while True:
            self.ws()
            if self.accept("]"):
                return tuple(out), start
            if out and self.peek() == ",":
                self.pos += 1
            out.append(self.number())

    def end(self):
        self.ws()
        if self.pos != len(self.text):
            self.fail(f"unexpected trailing text {self.text[self.pos:]!r}")


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == "'":
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


# membership functions --------------------------------------------------------

def _mf_body(cur: _Cursor) -> FuzzySet:
    """``'label':'code',[params]|[paramsy]`` starting at the cursor."""
    label = cur.quoted()
    cur.expect(":")
    cur.ws()
    code_col = cur.col
    cur.accept("'")  # the opening quote of the shape code is optional
    code = cur.word()
    cur.expect("'")
    if code not in SHAPE_CODES:
        raise UnknownShapeCode(f"unknown shape code {code!r}", cur.line, code_col)
    cur.expect(",")
    params, _ = cur.vector()
    if cur.accept("|"):
        paramsy, ycol = cur.vector()
    elif code in CANONICAL_PARAMSY:
        paramsy, ycol = CANONICAL_PARAMSY[code], cur.col
    else:
        cur.fail("pwlmf needs an explicit |[paramsy] vector")
    cur.end()
    if len(params) != len(paramsy):
        raise ParamsyLengthMismatch(
            f"{len(params)} params but {len(paramsy)} paramsy values", cur.line, ycol)
    if code in CANONICAL_PARAMSY and tuple(paramsy) != CANONICAL_PARAMSY[code]:
        raise ParamsyShapeMismatch(
            f"{code} requires paramsy {_vec(CANONICAL_PARAMSY[code])}, got {_vec(paramsy)}", cur.line, ycol)
    if not params:
        cur.fail("empty params vector")
    try:
        return make_set(zip(params, paramsy), label)
    except FuzzySetError as e:
        raise FisSyntaxError(str(e), cur.line, cur.col, reason=e.code) from None


def shape_code(s: FuzzySet) -> str:
    mus = tuple(float(m) for m in s.mus)
    for code, ys in CANONICAL_PARAMSY.items():
        if mus == ys:
            return code
    return "pwlmf"


def format_mf(key: str, s: FuzzySet) -> str:
    return f"{key}='{s.label}':'{shape_code(s)}',{_vec(s.xs)}|{_vec(s.mus)}"


def parse_mf_line(line: str, lineno: int = 1) -> tuple[str, int, FuzzySet]:
    """Parse ``MF<n>=...`` or ``OBS<n>=...``; returns (key, index, set)."""
    m = re.match(r"\s*(MF|OBS)(\d+)\s*=", line)
    if not m:
        raise FisSyntaxError("expected MF<n>= or OBS<n>=", lineno, 1)
    cur = _Cursor(line[m.end():], lineno, m.end())
    return m.group(1), int(m.group(2)), _mf_body(cur)


# documents ------------------------------------------------------------------

@dataclass(eq=False)
class RuleBaseDocument:
    name: str
    inputs: tuple[LinguisticPartition, ...]
    output: LinguisticPartition
    rules: tuple[Rule, ...]
    default_method: Optional[str] = None
    source_text: Optional[str] = field(default=None, repr=False)

    def structure(self) -> tuple:
        def part(p: LinguisticPartition):
            return (p.dimension_name, p.range, tuple((t.label, t.points) for t in p.terms))
        return (self.name, self.default_method, tuple(part(p) for p in self.inputs), part(self.output),
                tuple((r.antecedents, r.consequent, float(r.weight)) for r in self.rules))

    def __eq__(self, other) -> bool:
        return isinstance(other, RuleBaseDocument) and self.structure() == other.structure()

    def rule_base(self) -> RuleBase:
        return RuleBase(self.inputs, self.output, self.rules)

    @classmethod
    def from_rule_base(cls, rb: RuleBase, name: str = "frikit", default_method: Optional[str] = None):
        return cls(name, rb.inputs, rb.output, rb.rules, default_method)


_SYSTEM_KEYS = ("Name", "Method", "NumInputs", "NumOutputs", "NumRules")
_PART_KEYS = ("Name", "Range", "NumMFs")


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).rstrip()
        if body.strip():
            yield i, body


def parse_fis(text: str) -> RuleBaseDocument:
    sections: dict[str, tuple[int, list[tuple[int, str]]]] = {}
    current: Optional[str] = None
    for lineno, body in _lines(text):
        stripped = body.strip()
        if stripped.startswith("["):
            m = re.fullmatch(r"\[(System|Input\d+|Output\d+|Rules)\]", stripped)
            if not m:
                raise FisSyntaxError(f"unknown section header {stripped!r}", lineno, body.index("[") + 1)
            current = m.group(1)
            if current in sections:
                raise FisSyntaxError(f"duplicate section [{current}]", lineno, 1)
            sections[current] = (lineno, [])
            continue
        if current is None:
            raise FisSyntaxError("content before the first section", lineno, 1)
        sections[current][1].append((lineno, body))

    last_line = len(text.splitlines()) or 1
    if "System" not in sections:
        raise MissingSection("missing [System] section", last_line, 1)
    sysvals = _key_values(sections["System"][1], _SYSTEM_KEYS)
    for key in ("Name", "NumInputs", "NumOutputs", "NumRules"):
        if key not in sysvals:
            raise MissingSection(f"[System] lacks {key}", sections["System"][0], 1)
    name = _as_quoted(sysvals["Name"])
    method = _as_quoted(sysvals["Method"]) if "Method" in sysvals else None
    n_in = _as_int(sysvals["NumInputs"])
    n_out = _as_int(sysvals["NumOutputs"])
    n_rules = _as_int(sysvals["NumRules"])
    if n_in < 1:
        raise FisSyntaxError("NumInputs must be at least 1", sysvals["NumInputs"][0], 1)
    if n_out != 1:
        raise FisSyntaxError("exactly one output is supported", sysvals["NumOutputs"][0], 1)
    for sec in sections:
        m = re.fullmatch(r"(Input|Output)(\d+)", sec)
        if m and (int(m.group(2)) < 1 or int(m.group(2)) > (n_in if m.group(1) == "Input" else 1)):
            raise FisSyntaxError(f"section [{sec}] exceeds the declared count", sections[sec][0], 1)
    inputs = []
    for k in range(1, n_in + 1):
        key = f"Input{k}"
        if key not in sections:
            raise MissingSection(f"missing [{key}] section", last_line, 1)
        inputs.append(_partition(key, *sections[key]))
    if "Output1" not in sections:
        raise MissingSection("missing [Output1] section", last_line, 1)
    output = _partition("Output1", *sections["Output1"])
    if "Rules" not in sections:
        raise MissingSection("missing [Rules] section", last_line, 1)
    rules = [_rule(lineno, body, inputs, output) for lineno, body in sections["Rules"][1]]
    if len(rules) != n_rules:
        raise FisSyntaxError(f"NumRules={n_rules} but {len(rules)} rule lines", sysvals["NumRules"][0], 1)
    return RuleBaseDocument(name, tuple(inputs), output, tuple(rules), method, text)


def _key_values(lines, allowed) -> dict[str, tuple[int, str, int]]:
    out: dict[str, tuple[int, str, int]] = {}
    for lineno, body in lines:
        m = re.match(r"\s*([A-Za-z]+)\s*=", body)
        if not m or m.group(1) not in allowed:
            raise FisSyntaxError(f"unexpected line {body.strip()!r}", lineno, 1)
        if m.group(1) in out:
            raise FisSyntaxError(f"duplicate key {m.group(1)}", lineno, 1)
        out[m.group(1)] = (lineno, body[m.end():], m.end())
    return out


def _as_quoted(entry) -> str:
    lineno, rest, offset = entry
    cur = _Cursor(rest, lineno, offset)
    value = cur.quoted()
    cur.end()
    return value


def _as_int(entry) -> int:
    lineno, rest, offset = entry
    cur = _Cursor(rest, lineno, offset)
    value = cur.integer()
    cur.end()
    return value


def _partition(section: str, header_line: int, lines) -> LinguisticPartition:
    plain = [(n, b) for n, b in lines if not re.match(r"\s*MF\d+\s*=", b)]
    mfs = [(n, b) for n, b in lines if re.match(r"\s*MF\d+\s*=", b)]
    vals = _key_values(plain, _PART_KEYS)
    for key in _PART_KEYS:
        if key not in vals:
            raise MissingSection(f"[{section}] lacks {key}", header_line, 1)
    name = _as_quoted(vals["Name"])
    lineno, rest, offset = vals["Range"]
    cur = _Cursor(rest, lineno, offset)
    rng, col = cur.vector()
    cur.end()
    if len(rng) != 2:
        raise FisSyntaxError("Range needs two values", lineno, col)
    n_mfs = _as_int(vals["NumMFs"])
    terms: dict[int, FuzzySet] = {}
    for lineno, body in mfs:
        _, idx, s = parse_mf_line(body, lineno)
        if idx in terms:
            raise FisSyntaxError(f"duplicate MF{idx}", lineno, 1)
        terms[idx] = s
    if sorted(terms) != list(range(1, n_mfs + 1)):
        raise FisSyntaxError(f"[{section}] declares NumMFs={n_mfs} but defines MF{sorted(terms)}",
                             vals["NumMFs"][0], 1)
    return LinguisticPartition(name, (rng[0], rng[1]), tuple(terms[i] for i in range(1, n_mfs + 1)))


def _rule(lineno: int, body: str, inputs, output) -> Rule:
    cur = _Cursor(body, lineno)
    idx = []
    cols = []
    while True:
        cur.ws()
        cols.append(cur.col)
        idx.append(cur.integer())
        cur.ws()
        if cur.peek() == "(":
            break
        cur.accept(",")
    cur.expect("(")
    weight = cur.number()
    cur.expect(")")
    cur.expect(":")
    conn = cur.integer()
    cur.end()
    if conn != 1:
        raise FisSyntaxError("only the AND connective (1) is supported", lineno, cur.col - 1)
    if len(idx) != len(inputs) + 1:
        raise FisSyntaxError(f"rule has {len(idx) - 1} antecedents for {len(inputs)} inputs", lineno, 1)
    for k, (i, col) in enumerate(zip(idx, cols)):
        part = output if k == len(inputs) else inputs[k]
        if i == 0:
            raise FisSyntaxError("don't-care index 0 is not supported", lineno, col)
        if not 1 <= i <= len(part.terms):
            raise FisSyntaxError(f"term index {i} out of range 1..{len(part.terms)}", lineno, col)
    return Rule(tuple(i - 1 for i in idx[:-1]), idx[-1] - 1, weight)


def serialize_fis(doc: RuleBaseDocument) -> str:
    out = ["[System]", f"Name='{doc.name}'"]
    if doc.default_method:
        out.append(f"Method='{doc.default_method}'")
    out += [f"NumInputs={len(doc.inputs)}", "NumOutputs=1", f"NumRules={len(doc.rules)}"]
    parts = [(f"Input{k + 1}", p) for k, p in enumerate(doc.inputs)] + [("Output1", doc.output)]
    for sec, p in parts:
        out += ["", f"[{sec}]", f"Name='{p.dimension_name}'", f"Range={_vec(p.range)}",
                f"NumMFs={len(p.terms)}"]
        out += [format_mf(f"MF{j + 1}", t) for j, t in enumerate(p.terms)]
    out += ["", "[Rules]"]
    for r in doc.rules:
        idx = [a + 1 for a in r.antecedents] + [r.consequent + 1]
        out.append(", ".join(str(i) for i in idx) + f" ({format_num(r.weight)}) : 1")
    return "\n".join(out) + "\n"


# observations ----------------------------------------------------------------

def parse_observation(text: str) -> Observation:
    found: dict[int, FuzzySet] = {}
    last = 0
    for lineno, body in _lines(text):
        key, idx, s = parse_mf_line(body, lineno)
        if key != "OBS":
            raise FisSyntaxError("observation files hold OBS<k>= lines only", lineno, 1)
        if idx in found:
            raise FisSyntaxError(f"duplicate OBS{idx}", lineno, 1)
        found[idx] = s
        last = lineno
    if not found:
        raise MissingSection("no OBS lines", 1, 1)
    for k in range(1, max(found) + 1):
        if k not in found:
            raise DimensionGap(f"OBS{k} missing (highest index is {max(found)})", last, 1)
    return Observation(tuple(found[k] for k in range(1, len(found) + 1)))


def serialize_observation(obs: Observation | Sequence[FuzzySet]) -> str:
    sets = obs.sets if isinstance(obs, Observation) else tuple(obs)
    return "".join(format_mf(f"OBS{k + 1}", s) + "\n" for k, s in enumerate(sets))


# reports ---------------------------------------------------------------------

CSV_COLUMNS = ("example", "method", "status", "abnormal", "linear", "lf", "lc", "rc", "rf")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "nan" if math.isnan(v) else format_num(v)
    return str(v)


def write_csv(rows: Iterable[dict], stream: TextIO | None = None) -> str:
    """Write report rows (dicts keyed by :data:`CSV_COLUMNS`); returns the text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in CSV_COLUMNS])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text
