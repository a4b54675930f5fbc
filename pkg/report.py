"""
report.py — Tables and HTML report export for StingrayKneser.

Turns engine results into pandas DataFrames (the one tabular shape the
CLI writers, the dashboard tables and the HTML export all share) and
builds a self-contained dark-theme HTML report containing:
  - Formula scorecard for one (e1, e2) across q
  - P(e1, e2) with its two-sided bounds versus q (Plotly, embedded via CDN)
  - Bound grid table
  - Verification results and Monte Carlo reports, when supplied

Cells holding exact values are Fractions; serialize renders them as
'num/den'. No Streamlit dependency — importable and testable standalone.
"""

from datetime import datetime, timezone
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import pandas as pd
import plotly.graph_objects as go

import exactq
from config import COLOURS
from errors import BoundNotApplicable
from field import make_field
from models import CheckResult, DuoCensus, TrialReport, WalkCensus
from serialize import decimal_str
from ui_components import chart_layout, fmt_poly_key, fmt_rational, metric_card, xe


# ══════════════════════════════════════════════════════════════════════════════
# FORMULA TABLES
# ══════════════════════════════════════════════════════════════════════════════

def _status(ok: bool) -> str:
    return 'PASS' if ok else 'FAIL'


def formula_row(e1: int, e2: int, q: int) -> dict:
    """
    Everything the formulas command prints for one (e1, e2, q): P exact and
    decimal, the two-sided bounds with their status, 1/ξ, 1 − P/ξ, the
    reducible-pair bound and, for even d, the earlier d-dependent bound.
    Blank (None) cells mark bounds outside their stated range.
    """
    d = e1 + e2
    P = exactq.proportion_P(e1, e2, q)
    row = {'e1': e1, 'e2': e2, 'q': q, 'd': d, 'P': P, 'P_decimal': decimal_str(P),
           'lower': None, 'upper': None, 'bounds': 'n/a'}
    try:
        b = exactq.two_sided_bounds(e1, e2, q)
        row.update(lower=b.lower, upper=b.upper, bounds=_status(b.holds))
    except BoundNotApplicable:
        pass
    row['duo_fraction'] = exactq.duo_fraction(e1, e2, q)
    row['reducible_pair'] = exactq.reducible_pair_value(e1, e2, q)
    row['pair_bound'] = exactq.reducible_pair_bound(q)
    row['pair_check'] = _status(exactq.reducible_pair_check(e1, e2, q).holds) if e2 >= 2 else 'n/a'
    row['legacy_bound'] = exactq.legacy_pair_bound(d, q) if d % 2 == 0 else None
    return row


def formulas_frame(triples: Iterable[Sequence[int]]) -> pd.DataFrame:
    return pd.DataFrame([formula_row(e1, e2, q) for e1, e2, q in triples])


def table_frame(qs: Sequence[int], max_e: int) -> pd.DataFrame:
    """
    Grid of P against its bounds over 1 ≤ e2 ≤ e1 ≤ max_e and q ∈ qs.
    For even d the grid also confirms that the reducible-pair bound sits
    strictly below the earlier d-dependent bound, and flags the earlier
    bound as vacuous where it reaches 1.
    """
    rows = []
    for q in qs:
        for e1 in range(1, max_e + 1):
            for e2 in range(1, e1 + 1):
                row = formula_row(e1, e2, q)
                legacy = row['legacy_bound']
                row['improves'] = (row['pair_bound'] < legacy) if legacy is not None else None
                row['legacy_vacuous'] = (legacy >= 1) if legacy is not None else None
                rows.append(row)
    return pd.DataFrame(rows)


def bounds_curve(e1: int, e2: int, qs: Sequence[int]) -> pd.DataFrame:
    """Float columns of P and its bounds versus q, for charts only."""
    rows = []
    for q in qs:
        r = formula_row(e1, e2, q)
        rows.append({'q': q, 'P': float(r['P']),
                     'lower': float(r['lower']) if r['lower'] is not None else None,
                     'upper': float(r['upper']) if r['upper'] is not None else None,
                     'duo_fraction': float(r['duo_fraction'])})
    return pd.DataFrame(rows)


# ══════════════════════════════════════════════════════════════════════════════
# CENSUS / MONTE CARLO / CHECK TABLES
# ══════════════════════════════════════════════════════════════════════════════

_WALK_FIELDS = [
    ('walks3',        'walk3_count'),
    ('arcs3',         'arc3_count'),
    ('closed_walks3', 'closed_walk3_count'),
    ('closed_arcs3',  'closed_arc3_count'),
]


def walk_census_row(c: WalkCensus) -> dict:
    """Oracle counts beside the formula counts. Formulas are compared only
    when the ambient dimension is e1 + e2."""
    p = c.params
    row = {'oracle': c.oracle_kind, 'e1': p.e1, 'e2': p.e2, 'q': p.q, 'd': c.d,
           'reversed': c.reversed_side}
    comparable = c.d == p.d
    match = True
    for attr, fn in _WALK_FIELDS:
        actual = getattr(c, attr)
        row[attr] = actual
        if comparable:
            expected = getattr(exactq, fn)(p.e1, p.e2, p.q)
            row[attr + '_formula'] = expected
            match = match and actual == expected
    row['proportion'] = c.proportion
    row['match'] = match if comparable else None
    row['wall_time_s'] = round(c.wall_time_s, 3)
    return row


def walk_census_frame(censuses: Iterable[WalkCensus]) -> pd.DataFrame:
    return pd.DataFrame([walk_census_row(c) for c in censuses])


def rank_hist_frame(c: WalkCensus) -> pd.DataFrame:
    """Per-rank closed-walk / closed-arc hits of an (A,B) census beside the rank terms."""
    p = c.params
    rows = []
    for k, (walk_hits, arc_hits) in sorted(c.rank_hist.items()):
        rows.append({'rank': k,
                     'closed_walk_hits': walk_hits,
                     'closed_walk_term': exactq.closed_walk_rank_term(p.e1, p.e2, k, p.q),
                     'closed_arc_hits':  arc_hits,
                     'closed_arc_term':  exactq.closed_arc_rank_term(p.e1, p.e2, k, p.q)})
    return pd.DataFrame(rows)


def duo_census_frame(census: DuoCensus) -> pd.DataFrame:
    """One row per ordered class pair, with the exact targets alongside."""
    spec = make_field(census.q)
    complementary = census.d == census.e1 + census.e2
    P = exactq.proportion_P(census.e1, census.e2, census.q) if complementary else None
    duo_target = exactq.duo_fraction(census.e1, census.e2, census.q) if complementary else None
    rows = []
    for (k1, k2), c in census.per_class.items():
        rows.append({
            'class1': fmt_poly_key(k1, spec), 'class2': fmt_poly_key(k2, spec),
            'pairs': c.pairs, 'non_duo': c.non_duo,
            'reducible_duo': c.reducible_duo, 'irreducible_duo': c.irreducible_duo,
            'duo_fraction': c.duo_fraction, 'duo_target': duo_target,
            'irreducible_fraction': c.irreducible_fraction, 'P': P,
            'fibres': ', '.join(f'{size}×{n}' for size, n in sorted(c.fibre_hist.items())),
        })
    return pd.DataFrame(rows)


def duo_census_summary(census: DuoCensus) -> dict:
    out = {'d': census.d, 'q': census.q, 'e1': census.e1, 'e2': census.e2,
           'sweep': census.sweep,
           'class_size1': next(iter(census.class_sizes1.values()), 0),
           'classes1': len(census.class_sizes1),
           'class_size2': next(iter(census.class_sizes2.values()), 0),
           'classes2': len(census.class_sizes2),
           'pairs': census.pairs, 'duos': census.duos,
           'irreducible_duo': census.irreducible_duo,
           'duo_fraction': census.duo_fraction,
           'irreducible_fraction': census.irreducible_fraction,
           'spin_checked': census.spin_checked, 'spin_mismatches': census.spin_mismatches,
           'wall_time_s': round(census.wall_time_s, 3)}
    return out


def trial_frame(reports: Iterable[TrialReport]) -> pd.DataFrame:
    rows = []
    for r in reports:
        rows.append({'kind': r.kind, 'mode': r.mode, 'd': r.d, 'q': r.q, 'e1': r.e1, 'e2': r.e2,
                     'trials': r.trials, 'hits': r.hits,
                     'estimate': round(r.estimate, 8), 'stderr': round(r.stderr, 8),
                     'target': r.exact_target, 'target_decimal': decimal_str(r.exact_target),
                     'z': round(r.z_score, 3), 'seed': r.seed, 'workers': r.workers,
                     'wall_time_s': round(r.wall_time_s, 3)})
    return pd.DataFrame(rows)


def checks_frame(results: Iterable[CheckResult]) -> pd.DataFrame:
    return pd.DataFrame([{'group': r.group, 'name': r.name, 'status': r.status.upper(),
                          'expected': r.expected, 'actual': r.actual, 'detail': r.detail}
                         for r in results],
                        columns=['group', 'name', 'status', 'expected', 'actual', 'detail'])


# ══════════════════════════════════════════════════════════════════════════════
# CHARTS
# ══════════════════════════════════════════════════════════════════════════════

def p_versus_q_figure(e1: int, e2: int, qs: Sequence[int], height: int = 340) -> go.Figure:
    """P(e1, e2) with its lower and upper bounds, and 1/ξ, as functions of q."""
    C = COLOURS
    df = bounds_curve(e1, e2, qs)
    fig = go.Figure()
    fig.add_trace(go.Scatter(x=df['q'], y=df['P'], mode='lines+markers', name='P',
                             line=dict(color=C['blue'], width=2),
                             hovertemplate='q=%{x}<br><b>P=%{y:.6f}</b><extra></extra>'))
    if df['lower'].notna().any():
        fig.add_trace(go.Scatter(x=df['q'], y=df['lower'], mode='lines', name='lower bound',
                                 line=dict(color=C['green'], width=1, dash='dot')))
        fig.add_trace(go.Scatter(x=df['q'], y=df['upper'], mode='lines', name='upper bound',
                                 line=dict(color=C['red'], width=1, dash='dot')))
    fig.add_trace(go.Scatter(x=df['q'], y=df['duo_fraction'], mode='lines', name='1/ξ',
                             line=dict(color=C['purple'], width=1)))
    lay = chart_layout(f'P({e1},{e2}) and its bounds versus q', height=height, margin_t=40)
    lay['xaxis']['title'] = 'q'
    lay['yaxis']['tickformat'] = '.3f'
    fig.update_layout(**lay)
    return fig


# ══════════════════════════════════════════════════════════════════════════════
# HTML REPORT EXPORT
# ══════════════════════════════════════════════════════════════════════════════

def _html_table(df: pd.DataFrame) -> str:
    if df.empty:
        return '<p style="color:' + COLOURS['text_muted'] + '">No rows.</p>'
    head = ''.join('<th>' + xe(c) + '</th>' for c in df.columns)
    body = ''
    for _, row in df.iterrows():
        cells = ''
        for v in row:
            if isinstance(v, Fraction):
                v = fmt_rational(v)
            elif v is None or (isinstance(v, float) and pd.isna(v)):
                v = '—'
            colour = {'PASS': COLOURS['green'], 'FAIL': COLOURS['red']}.get(str(v), '')
            style = ' style="color:' + colour + ';font-weight:600;"' if colour else ''
            cells += '<td' + style + '>' + xe(v) + '</td>'
        body += '<tr>' + cells + '</tr>\n'
    return '<table><thead><tr>' + head + '</tr></thead><tbody>' + body + '</tbody></table>'


def build_html_report(e1: int, e2: int, qs: Sequence[int],
                      checks: Optional[List[CheckResult]] = None,
                      reports: Optional[List[TrialReport]] = None,
                      census: Optional[DuoCensus] = None) -> str:
    """Build a self-contained dark-theme HTML report string for one (e1, e2)."""
    C = COLOURS
    generated = datetime.now(timezone.utc).strftime('%Y-%m-%d %H:%M UTC')
    q0 = qs[0]
    head_row = formula_row(e1, e2, q0)
    cards = {
        f'P({e1},{e2}) at q={q0}': fmt_rational(head_row['P']),
        'Decimal':                 head_row['P_decimal'],
        'Bounds':                  head_row['bounds'],
        '1/ξ':                     fmt_rational(head_row['duo_fraction']),
        '1 − P/ξ':                 fmt_rational(head_row['reducible_pair']),
        'Pair bound':              fmt_rational(head_row['pair_bound']),
    }
    cards_html = ''.join(metric_card(k, v) for k, v in cards.items())

    html_fig = p_versus_q_figure(e1, e2, qs).to_html(
        full_html=False, include_plotlyjs='cdn', config={'displayModeBar': False})
    grid = formulas_frame((e1, e2, q) for q in qs)[
        ['q', 'P', 'P_decimal', 'lower', 'upper', 'bounds', 'duo_fraction', 'reducible_pair', 'pair_check']]

    sections = [
        '<div class="section"><h2>Formula scorecard</h2><div class="metrics">' + cards_html + '</div></div>',
        '<div class="section"><h2>P versus q</h2>' + html_fig + '</div>',
        '<div class="section"><h2>Bound grid</h2>' + _html_table(grid) + '</div>',
    ]
    if census is not None:
        sections.append('<div class="section"><h2>Group census GL_' + str(census.d) + '(' + str(census.q)
                        + ')</h2>' + _html_table(duo_census_frame(census)) + '</div>')
    if reports:
        sections.append('<div class="section"><h2>Monte Carlo</h2>' + _html_table(trial_frame(reports)) + '</div>')
    if checks:
        failed = [r for r in checks if r.status == 'fail']
        shown = checks_frame(failed if failed else checks[:200])
        title = f'Verification — {len(failed)} failing of {len(checks)}'
        sections.append('<div class="section"><h2>' + xe(title) + '</h2>' + _html_table(shown) + '</div>')

    bdr = C['border']; txt = C['header_text']; mut = C['text_muted']
    _css = (
        '* { box-sizing:border-box; margin:0; padding:0; }\n'
        'body { background:' + C['page_bg'] + '; color:' + txt + '; font-family:"IBM Plex Sans",system-ui,sans-serif; font-size:14px; line-height:1.6; padding:32px 24px; }\n'
        'h1 { font-size:1.5rem; font-weight:700; margin-bottom:4px; }\n'
        'h2 { font-size:1.05rem; font-weight:600; margin-bottom:14px; padding-bottom:8px; border-bottom:1px solid ' + bdr + '; }\n'
        '.meta { color:' + mut + '; font-size:0.8rem; margin-bottom:32px; }\n'
        '.section { background:#1a2233; border:1px solid ' + bdr + '; border-radius:10px; padding:20px 24px; margin-bottom:24px; overflow-x:auto; }\n'
        '.metrics { display:flex; flex-wrap:wrap; gap:12px; }\n'
        'table { width:100%; border-collapse:collapse; font-size:0.82rem; font-family:monospace; }\n'
        'th { color:' + mut + '; text-transform:uppercase; font-size:0.68rem; text-align:right; padding:6px 10px; border-bottom:1px solid ' + bdr + '; }\n'
        'td { padding:5px 10px; text-align:right; border-bottom:1px solid ' + bdr + '22; }\n'
        'td:first-child, th:first-child { text-align:left; }\n'
        '.footer { color:' + mut + '; font-size:0.75rem; text-align:center; margin-top:32px; padding-top:16px; border-top:1px solid ' + bdr + '; }\n'
    )
    return (
        '<!DOCTYPE html>\n<html lang="en">\n<head>\n'
        '<meta charset="UTF-8">\n'
        '<meta name="viewport" content="width=device-width,initial-scale=1">\n'
        '<title>StingrayKneser Report · (' + str(e1) + ',' + str(e2) + ')</title>\n'
        '<style>\n' + _css + '</style>\n</head>\n<body>\n'
        '<h1>StingrayKneser Report</h1>\n'
        '<div class="meta">(e1, e2) = (' + str(e1) + ', ' + str(e2) + ') &nbsp;·&nbsp; q ∈ {'
        + ', '.join(str(q) for q in qs) + '} &nbsp;·&nbsp; Generated: ' + generated + '</div>\n'
        + '\n'.join(sections)
        + '\n<div class="footer">StingrayKneser · ' + generated + '</div>\n'
        + '</body>\n</html>'
    )
