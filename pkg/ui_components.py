"""
StingrayKneser — UI Components
==============================
Pure visual helpers: HTML snippets, chart layouts, DataFrame stylers and
value formatters. No engine math lives here. These functions only produce
strings, dicts and style values for rendering.

Dependencies: pandas (isna), config (palette).
"""

import html
from fractions import Fraction

import pandas as pd

from config import COLOURS

_C = COLOURS


# ── XSS safety ────────────────────────────────────────────────────────────────

def xe(s):
    """Escape a string for safe HTML interpolation."""
    return html.escape(str(s), quote=True)


# ── Value formatting ──────────────────────────────────────────────────────────

def fmt_rational(x, max_len=24):
    """
    Short display form of an exact rational. Long numerators / denominators
    fall back to a 6-significant-digit decimal with a '≈' prefix.

    Examples:
        fmt_rational(Fraction(93, 256))   → '93/256'
        fmt_rational(Fraction(1))         → '1'
        fmt_rational(Fraction(10**30, 3)) → '≈3.33333e+29'
    """
    if x is None or (not isinstance(x, Fraction) and pd.isna(x)):
        return '—'
    x = Fraction(x)
    s = str(x.numerator) if x.denominator == 1 else f'{x.numerator}/{x.denominator}'
    if len(s) <= max_len:
        return s
    return f'≈{float(x):.6g}'


def fmt_poly_key(key, spec):
    """Readable restriction polynomial for a class key (index tuple)."""
    from field import poly_str
    return poly_str(key, spec)


def fmt_status(status):
    return {'pass': 'PASS', 'fail': 'FAIL', 'skipped': 'SKIPPED'}.get(status, str(status).upper())


# ── DataFrame stylers ─────────────────────────────────────────────────────────

def color_status(v):
    """Green / red / amber for PASS / FAIL / SKIPPED cells in st.dataframe."""
    s = str(v).upper()
    if s == 'PASS':    return 'color: ' + _C['green'] + '; font-weight: bold'
    if s == 'FAIL':    return 'color: ' + _C['red'] + '; font-weight: bold'
    if s.startswith('SKIP') or s == 'N/A': return 'color: ' + _C['orange']
    return ''


def color_match(v):
    """Boolean match columns: green tick, red cross."""
    if v is True:  return 'color: ' + _C['green']
    if v is False: return 'color: ' + _C['red'] + '; font-weight: bold'
    return ''


def color_z(v):
    """|z| colouring for Monte Carlo tables: dim under 2, amber to 4, red beyond."""
    if not isinstance(v, (int, float)) or pd.isna(v): return ''
    a = abs(v)
    if a < 2: return 'color: ' + _C['text_dim']
    if a < 4: return 'color: ' + _C['orange']
    return 'color: ' + _C['red'] + '; font-weight: bold'


def style_status_row(row):
    """Row tint by the row's 'status' column."""
    bg = {'PASS': _C['pass_bg'], 'FAIL': _C['fail_bg'], 'SKIPPED': _C['skip_bg']}.get(
        str(row.get('status', '')).upper(), '')
    return [f'background-color:{bg}' if bg else ''] * len(row)


# ── Plotly chart layout ───────────────────────────────────────────────────────

def chart_layout(title='', height=300, margin_t=36, margin_b=20):
    """Consistent base layout dict for all Plotly charts."""
    return dict(
        template='plotly_dark',
        height=height,
        paper_bgcolor='rgba(10,14,23,0)',
        plot_bgcolor='rgba(10,14,23,0)',
        font=dict(family='IBM Plex Sans, sans-serif', size=12, color=_C['text_muted']),
        title=dict(
            text=title,
            font=dict(size=13, color=_C['header_text'], family='IBM Plex Sans'),
            x=0, xanchor='left', pad=dict(l=0, b=8),
        ) if title else None,
        margin=dict(l=8, r=8, t=margin_t if title else 16, b=margin_b),
        xaxis=dict(
            gridcolor='rgba(255,255,255,0.05)',
            linecolor='rgba(255,255,255,0.08)',
            tickfont=dict(size=11),
        ),
        yaxis=dict(
            gridcolor='rgba(255,255,255,0.05)',
            linecolor='rgba(255,255,255,0.08)',
            tickfont=dict(size=11),
        ),
        legend=dict(bgcolor='rgba(0,0,0,0)', borderwidth=0, font=dict(size=11)),
    )


# ── Inline HTML components ────────────────────────────────────────────────────

def status_chip(label, status):
    """Inline chip: label plus a coloured PASS / FAIL / SKIPPED badge."""
    s = fmt_status(status)
    col = {'PASS': _C['green'], 'FAIL': _C['red']}.get(s, _C['orange'])
    return (
        f'<span style="display:inline-flex;align-items:center;gap:6px;'
        f'background:rgba(255,255,255,0.04);border:1px solid {_C["border"]};'
        f'border-radius:6px;padding:3px 10px;margin:2px 4px 2px 0;font-size:0.78rem;">'
        f'<span style="color:{_C["text_dim"]};">{xe(label)}</span>'
        f'<span style="color:{col};font-family:monospace;font-weight:600;">{s}</span>'
        f'</span>'
    )


def metric_card(label, value, sub=''):
    """Small dark card with an uppercase label, a monospace value and an optional subline."""
    sub_html = (f'<div style="color:{_C["text_dim"]};font-size:0.72rem;margin-top:2px;">'
                f'{xe(sub)}</div>') if sub else ''
    return (
        f'<div style="background:{_C["card_bg"]};border:1px solid {_C["border"]};border-radius:8px;'
        f'padding:14px 18px;min-width:130px;">'
        f'<div style="color:{_C["text_muted"]};font-size:0.7rem;text-transform:uppercase;'
        f'letter-spacing:0.05em;margin-bottom:4px;">{xe(label)}</div>'
        f'<div style="font-family:monospace;font-size:1.1rem;color:{_C["header_text"]};'
        f'font-weight:600;">{xe(value)}</div>{sub_html}'
        f'</div>'
    )


def metric_row(cards):
    return '<div style="display:flex;flex-wrap:wrap;gap:12px;margin:6px 0 14px 0;">' + ''.join(cards) + '</div>'


# ── DataFrame display ─────────────────────────────────────────────────────────

def display_frame(df):
    """Copy of df with Fraction cells rendered as text; Arrow cannot hold Fractions."""
    out = df.copy()
    for col in out.columns:
        if out[col].map(lambda v: isinstance(v, Fraction)).any():
            out[col] = out[col].map(lambda v: fmt_rational(v) if isinstance(v, Fraction) else v)
    return out
