"""
tabs/tab1_formulas.py — Formulas & Bounds tab renderer.
"""

import pandas as pd
import streamlit as st

import exactq
import report
from errors import BoundNotApplicable
from ui_components import (
    color_match, color_status, display_frame, fmt_rational, metric_card, metric_row,
)


def render_tab1(e1, e2, q, qs, get_formulas):
    """Tab 1 — exact P(e1, e2) at the chosen q, its bound chain, and P versus q."""
    st.markdown(f'### 📐 Formulas & Bounds · (e1, e2) = ({e1}, {e2})')
    st.caption(
        'P is the proportion of closed 3-arcs among 3-walks of the bipartite q-Kneser graph, '
        'equivalently the irreducible fraction among (e1, e2)-stingray duos of GL_d(q), d = e1 + e2. '
        'All values are exact; the decimal column is for reading only.'
    )

    row = report.formula_row(e1, e2, q)
    st.markdown(metric_row([
        metric_card(f'P at q={q}', fmt_rational(row['P']), row['P_decimal']),
        metric_card('Bounds', row['bounds'],
                    f"{fmt_rational(row['lower'])} < P < {fmt_rational(row['upper'])}"
                    if row['lower'] is not None else 'not applicable'),
        metric_card('1/ξ (duo fraction)', fmt_rational(row['duo_fraction'])),
        metric_card('1 − P/ξ', fmt_rational(row['reducible_pair']), f"bound {fmt_rational(row['pair_bound'])}"),
        metric_card('Earlier bound', fmt_rational(row['legacy_bound']) if row['legacy_bound'] is not None else '—',
                    'even d only'),
    ]), unsafe_allow_html=True)

    st.plotly_chart(report.p_versus_q_figure(e1, e2, qs), width='stretch',
                    config={'displayModeBar': False})

    with st.expander('🔗 Bound chain at this q', expanded=False):
        try:
            chain = exactq.bound_chain(e1, e2, q)
        except BoundNotApplicable as exc:
            st.info(str(exc))
        else:
            chain_df = pd.DataFrame([{'name': b.name, 'lower': b.lower, 'value': b.value,
                                      'upper': b.upper, 'holds': b.holds} for b in chain])
            st.dataframe(display_frame(chain_df).style.map(color_match, subset=['holds']),
                         width='stretch', hide_index=True)

    st.markdown('#### 📋 Formula table')
    df = get_formulas(e1, e2, qs)
    if df.empty:
        st.info('No field orders selected.')
        return
    cols = ['q', 'P', 'P_decimal', 'lower', 'upper', 'bounds',
            'duo_fraction', 'reducible_pair', 'pair_check', 'legacy_bound']
    st.dataframe(
        display_frame(df[cols]).style.map(color_status, subset=['bounds', 'pair_check']),
        width='stretch', hide_index=True
    )
    st.caption('n/a: the two-sided bounds and the reducible-pair check need e2 ≥ 2. '
               'legacy_bound is blank for odd d.')
