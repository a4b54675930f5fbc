"""
StingrayKneser — Serialization
==============================
Writers and readers for the three machine-readable formats the CLI emits.

Exact rationals travel as "num/den" strings (integers as "n"), never as
floats, so re-reading a written file reproduces the identical Fraction.
Decimals are presentation only.

Public API
----------
  rational_str(x)              Fraction | int → 'num/den' | 'n'
  parse_rational(s)            inverse of rational_str
  decimal_str(x)               12 significant digits
  to_jsonable(obj)             dataclasses / NamedTuples / Counters → plain JSON types
  json_document(command, params, results, wall_time_s)   → dict
  write_json(doc, path)        → str (also written to path when given)
  read_json(source)            path or JSON text → dict with Fractions restored
  write_csv(df, path)          → str
  read_csv_rationals(source)   → DataFrame with rational columns as Fractions
  to_markdown(df)              → str (tabulate backend)
"""

from __future__ import annotations

import dataclasses
import io
import json
import os
import re
from collections import Counter
from decimal import Context, Decimal
from fractions import Fraction
from typing import Any, Optional, Union

import numpy as np
import pandas as pd

from config import DECIMAL_DIGITS, JSON_SCHEMA

_RATIONAL = re.compile(r'^-?\d+/\d+$')


# ── Scalars ───────────────────────────────────────────────────────────────────

def rational_str(x: Union[Fraction, int]) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f'{x.numerator}/{x.denominator}'


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def decimal_str(x: Union[Fraction, int, float], digits: int = DECIMAL_DIGITS) -> str:
    """
    Decimal rendering with `digits` significant digits, for display only.

    Examples:
        decimal_str(Fraction(93, 256))  → '0.36328125'
        decimal_str(Fraction(1, 3))     → '0.333333333333'
    """
    ctx = Context(prec=digits)
    if isinstance(x, float):
        value = ctx.create_decimal_from_float(x)
    else:
        x = Fraction(x)
        value = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    return format(value.normalize(ctx), 'f')


# ── JSON ──────────────────────────────────────────────────────────────────────

def _key_str(k: Any) -> str:
    if isinstance(k, tuple):
        return ','.join(_key_str(x) for x in k) if k else '()'
    return str(k)


def to_jsonable(obj: Any) -> Any:
    """Recursively convert results into JSON-safe values. Fractions become
    'num/den' strings; mapping keys (tuples, ints) become strings."""
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, np.generic):
        return obj.item()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for prop in ('proportion', 'duos', 'pairs', 'duo_fraction', 'irreducible_fraction'):
            if hasattr(type(obj), prop):
                out[prop] = to_jsonable(getattr(obj, prop))
        return out
    if isinstance(obj, tuple) and hasattr(obj, '_asdict'):
        return {k: to_jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, (dict, Counter)):
        return {_key_str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def json_document(command: str, params: dict, results: Any, wall_time_s: float) -> dict:
    return {
        'schema':      JSON_SCHEMA,
        'command':     command,
        'params':      to_jsonable(params),
        'results':     to_jsonable(results),
        'wall_time_s': round(wall_time_s, 6),
    }


def write_json(doc: dict, path: Optional[str] = None) -> str:
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    if path:
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(text + '\n')
    return text


def _restore(obj: Any) -> Any:
    if isinstance(obj, str) and _RATIONAL.match(obj):
        return Fraction(obj)
    if isinstance(obj, dict):
        return {k: _restore(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_restore(v) for v in obj]
    return obj


def read_json(source: str) -> dict:
    """Load a document from a path or from JSON text; 'num/den' strings
    come back as Fractions. Integer-valued rationals stay ints."""
    if os.path.exists(source):
        with open(source, encoding='utf-8') as fh:
            source = fh.read()
    return _restore(json.loads(source))


# ── CSV / Markdown ────────────────────────────────────────────────────────────

def _cell(v: Any) -> Any:
    return rational_str(v) if isinstance(v, Fraction) else v


def write_csv(df: pd.DataFrame, path: Optional[str] = None) -> str:
    text = df.apply(lambda col: col.map(_cell)).to_csv(index=False)
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)
    return text


def read_csv_rationals(source: str) -> pd.DataFrame:
    """
    Read a CSV written by write_csv. Every column whose non-empty cells all
    look like 'a/b' or integers, with at least one 'a/b', is parsed to
    Fractions. Other columns keep pandas' own dtypes.
    """
    if os.path.exists(source):
        df = pd.read_csv(source, dtype=str, keep_default_na=False)
    else:
        df = pd.read_csv(io.StringIO(source), dtype=str, keep_default_na=False)
    for col in df.columns:
        cells = [c for c in df[col] if c != '']
        if cells and any(_RATIONAL.match(c) for c in cells) \
                and all(_RATIONAL.match(c) or re.match(r'^-?\d+$', c) for c in cells):
            df[col] = df[col].map(lambda c: parse_rational(c) if c != '' else None)
        elif cells:
            df[col] = _numeric_or_text(df[col])
    return df


def _numeric_or_text(col: pd.Series) -> pd.Series:
    try:
        return pd.to_numeric(col)
    except (ValueError, TypeError):
        return col


def to_markdown(df: pd.DataFrame) -> str:
    return df.apply(lambda col: col.map(_cell)).to_markdown(index=False)
