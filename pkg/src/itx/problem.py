"""Line-oriented problem files.

    # comment
    field rational            | field prime 2
    vars x, y
    ideal: x*y - 1            (repeatable, comma separated, may be empty)
    assert domain normal factorial
    subalgebra: x, x*y        (tags g1, g2, ... in order)
    saturating: g1            (tag polynomials; ambient names if no subalgebra)
    action param t
    mu x = x + t*y
    group params c, a, b
    law c = c + c' + a*b'
    inverse c = -c + a*b
    chain filtered
"""
from __future__ import annotations

import re

from .idealops import PresentedRing, Subalgebra, _tag_names
from .polycore import QQ, ParseError, PolyRing, PrimeField, parse_poly

__all__ = ["ProblemFile", "parse_problem", "load_problem"]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class ProblemFile:
    def __init__(self):
        self.field = QQ
        self.vars = []
        self.flags = set()
        self.saturating_text = None
        self.action_params = None
        self.group_params = None
        self.chain = None
        self.order = "grevlex"
        # parsed objects
        self.ring = None
        self.ideal = []
        self.subalgebra_gens = None
        self.tags = None
        self.saturating = None
        self.mu = {}
        self.law = {}
        self.inverse = {}

    # -- builders --------------------------------------------------------
    def presented(self, order=None):
        return PresentedRing(self.vars, self.field, self.ideal,
                             domain=("domain" in self.flags) or None,
                             normal="normal" in self.flags,
                             factorial="factorial" in self.flags,
                             order=order or self.order)

    def subalgebra(self, S):
        gens = self.subalgebra_gens
        if gens is None:
            return Subalgebra(S, [S.var(n) for n in S.names], tags=self.tags)
        return Subalgebra(S, [g.to_ring(S.ring) for g in gens], tags=self.tags)

    def saturating_in(self, R):
        if self.saturating is None:
            raise ValueError("problem file has no saturating block")
        return [g.to_ring(R.tag_ring) for g in self.saturating]

    def ga_action(self, S):
        from .invariants import GaAction
        if not self.action_params:
            raise ValueError("problem file has no action block")
        if len(self.action_params) != 1:
            raise ValueError("a G_a action takes exactly one parameter")
        return GaAction(S, self.action_params[0], dict(self.mu))

    def unipotent_action(self, S):
        from .invariants import UnipotentAction
        if self.group_params is None:
            return self.ga_action(S).as_unipotent()
        return UnipotentAction(S, self.group_params, dict(self.mu),
                               law=dict(self.law) or None, inverse=dict(self.inverse) or None)


def _split_list(s):
    s = s.strip()
    return [p.strip() for p in s.split(",")] if s else []


def _parse_list(text, ring, lineno, line, offset):
    out = []
    pos = 0
    for piece in text.split(","):
        start = offset + pos + (len(piece) - len(piece.lstrip()))
        pos += len(piece) + 1
        piece = piece.strip()
        if not piece:
            raise ParseError("empty list entry", line, start, lineno)
        out.append(_poly_at(piece, ring, lineno, line, start))
    return out


def _poly_at(text, ring, lineno, line, start):
    try:
        return parse_poly(text, ring, lineno)
    except ParseError as e:
        raise ParseError(e.msg, line, start + e.pos, lineno) from None


def _names(text, lineno, line, offset):
    out = []
    for n in _split_list(text):
        if not _IDENT.match(n):
            raise ParseError(f"bad identifier {n!r}", line, offset + line[offset:].find(n), lineno)
        if n in out:
            raise ParseError(f"duplicate name {n!r}", line, offset + line[offset:].find(n), lineno)
        out.append(n)
    return out


def parse_problem(text):
    pf = ProblemFile()
    pending = []  # (keyword, payload, lineno, line, offset)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        s = line.lstrip()
        off = len(line) - len(s)
        m = re.match(r"(ideal:|subalgebra:|saturating:|field|vars|assert|action\s+param|mu|"
                     r"group\s+params|law|inverse|chain|order)(?=\s|:|$)", s)
        if not m:
            raise ParseError(f"unknown keyword {s.split()[0]!r}", line, off, lineno)
        kw = re.sub(r"\s+", " ", m.group(1))
        payload_off = off + m.end()
        payload = line[payload_off:]
        if kw == "field":
            parts = payload.split()
            if parts == ["rational"]:
                pf.field = QQ
            elif len(parts) == 2 and parts[0] == "prime" and parts[1].isdigit():
                try:
                    pf.field = PrimeField(int(parts[1]))
                except ValueError as e:
                    raise ParseError(str(e), line, payload_off + payload.find(parts[1]), lineno) from None
            else:
                raise ParseError("expected 'field rational' or 'field prime <p>'", line, payload_off, lineno)
        elif kw == "vars":
            if pf.vars:
                raise ParseError("vars declared twice", line, off, lineno)
            pf.vars = _names(payload, lineno, line, payload_off)
        elif kw == "assert":
            for flag in payload.split():
                if flag not in ("domain", "normal", "factorial"):
                    raise ParseError(f"unknown assertion {flag!r}", line,
                                     payload_off + payload.find(flag), lineno)
                pf.flags.add(flag)
            if "factorial" in pf.flags:
                pf.flags |= {"normal", "domain"}
            if "normal" in pf.flags:
                pf.flags.add("domain")
        elif kw == "action param":
            pf.action_params = _names(payload, lineno, line, payload_off)
        elif kw == "group params":
            pf.group_params = _names(payload, lineno, line, payload_off)
        elif kw == "chain":
            if payload.strip() != "filtered":
                raise ParseError("only 'chain filtered' is supported", line, payload_off, lineno)
            pf.chain = "filtered"
        elif kw == "order":
            if payload.strip() not in ("lex", "grevlex"):
                raise ParseError("order must be lex or grevlex", line, payload_off, lineno)
            pf.order = payload.strip()
        else:
            pending.append((kw, payload, lineno, line, payload_off))
    if not pf.vars:
        raise ParseError("missing 'vars' line", "", None, None)
    ring = PolyRing(pf.vars, pf.field, "grevlex")
    pf.ring = ring
    params = pf.group_params if pf.group_params is not None else (pf.action_params or [])
    for p in params:
        if p in pf.vars:
            raise ParseError(f"parameter {p!r} clashes with a variable", "", None, None)
    act_ring = PolyRing(tuple(pf.vars) + tuple(params), pf.field, "grevlex")
    law_ring = PolyRing(tuple(params) + tuple(p + "'" for p in params), pf.field, "grevlex")
    inv_ring = PolyRing(tuple(params), pf.field, "grevlex") if params else None
    for kw, payload, lineno, line, off in pending:
        if kw == "ideal:":
            if payload.strip():
                pf.ideal += _parse_list(payload, ring, lineno, line, off)
        elif kw == "subalgebra:":
            gens = _parse_list(payload, ring, lineno, line, off)
            pf.subalgebra_gens = (pf.subalgebra_gens or []) + gens
        elif kw == "saturating:":
            pf.saturating_text = (pf.saturating_text or []) + [(payload, lineno, line, off)]
        elif kw in ("mu", "law", "inverse"):
            m = re.match(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=", payload)
            if not m:
                raise ParseError(f"expected '{kw} <name> = <poly>'", line, off, lineno)
            name = m.group(1)
            body_off = off + m.end()
            body = line[body_off:]
            if kw == "mu":
                if name not in pf.vars:
                    raise ParseError(f"undeclared variable {name!r}", line, off + m.start(1), lineno)
                if not params:
                    raise ParseError("mu line before any 'action param' or 'group params'",
                                     line, off, lineno)
                pf.mu[name] = _poly_at(body.strip(), act_ring, lineno, line,
                                       body_off + len(body) - len(body.lstrip()))
            else:
                if name not in params:
                    raise ParseError(f"undeclared group coordinate {name!r}", line,
                                     off + m.start(1), lineno)
                target = law_ring if kw == "law" else inv_ring
                poly = _poly_at(body.strip(), target, lineno, line,
                                body_off + len(body) - len(body.lstrip()))
                (pf.law if kw == "law" else pf.inverse)[name] = poly
    # tags of the subalgebra generators
    ngen = len(pf.subalgebra_gens) if pf.subalgebra_gens is not None else len(pf.vars)
    pf.tags = _tag_names(pf.vars, ngen)
    if pf.saturating_text is not None:
        if pf.subalgebra_gens is None:
            # the tags stand for the variables, which may be named directly
            sat_ring = PolyRing(tuple(pf.vars), pf.field, "grevlex")
        else:
            sat_ring = PolyRing(tuple(pf.tags), pf.field, "grevlex")
        gens = []
        for payload, lineno, line, off in pf.saturating_text:
            if payload.strip():
                gens += _parse_list(payload, sat_ring, lineno, line, off)
        if pf.subalgebra_gens is None:
            tag_ring = PolyRing(tuple(pf.tags), pf.field, "grevlex")
            ren = {n: tag_ring.var(t) for n, t in zip(pf.vars, pf.tags)}
            gens = [g.substitute(ren, tag_ring) for g in gens]
        pf.saturating = gens
    if pf.law and pf.group_params is None:
        raise ParseError("law given without 'group params'", "", None, None)
    return pf


def load_problem(path):
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())
