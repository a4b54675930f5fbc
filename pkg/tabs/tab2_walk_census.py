"""
tabs/tab2_walk_census.py — Walk Census tab renderer.
"""

import pandas as pd
import streamlit as st

import census
import exactq
import report
from errors import StingrayError
from ui_components import color_match, display_frame, fmt_rational, metric_card, metric_row


def render_tab2(e1, e2, q, get_walk_censuses):
    """Tab 2 — brute-force walk counts beside the closed forms."""
    st.markdown(f'### 🕸 Walk Census · q = {q}')
    st.caption(
        'Counts 3-walks S0 → S1 → S2 → S3 of the bipartite q-Kneser graph on e1- and e2-subspaces '
        'by enumeration. A walk is an arc when S0 ≠ S2 and S1 ≠ S3, and closed when S3 is also '
        'adjacent to S0. The (A, B) census enumerates one frame and scales by the number of frames.'
    )

    c1, c2 = st.columns([1, 3])
    with c1:
        d = int(st.number_input('Ambient d', min_value=e1 + e2, max_value=e1 + e2 + 4,
                                value=e1 + e2, step=1, key='walk_d',
                                help='Formulas are compared only when d = e1 + e2.'))
        run = st.button('▶ Run census', key='walk_run', use_container_width=True)
    with c2:
        st.markdown(metric_row([
            metric_card('3-walks (formula)', f'{exactq.walk3_count(e1, e2, q):,}'),
            metric_card('closed 3-arcs (formula)', f'{exactq.closed_arc3_count(e1, e2, q):,}'),
            metric_card('P', fmt_rational(exactq.proportion_P(e1, e2, q))),
        ]), unsafe_allow_html=True)

    if run:
        st.session_state['walk_key'] = (e1, e2, q, d)
    key = st.session_state.get('walk_key')
    if key != (e1, e2, q, d):
        st.info('Press ▶ Run census to enumerate. Small cases such as (2, 2, 2) finish in seconds.')
        return

    try:
        censuses = get_walk_censuses(e1, e2, q, d)
    except StingrayError as exc:
        st.warning(f'Census refused: {exc}')
        return

    df = report.walk_census_frame(censuses)
    styled = display_frame(df).style
    if df['match'].notna().any():
        styled = styled.map(color_match, subset=['match'])
    st.dataframe(styled, width='stretch', hide_index=True)
    if d != e1 + e2:
        st.caption(f'd = {d} > e1 + e2: the graph census is shown without formula columns.')

    ab = next((c for c in censuses if c.oracle_kind == 'matrix_AB'), None)
    if ab is not None:
        st.markdown('#### Closed walks by rank of A')
        st.caption('Hits inside one frame, split by rank(A), beside the per-rank terms of the closed-walk '
                   'and closed-arc sums.')
        st.dataframe(display_frame(report.rank_hist_frame(ab)), width='stretch', hide_index=True)

    with st.expander('📊 Rank distribution of e2 × e1 matrices', expanded=False):
        try:
            hist = census.rank_census(e2, e1, q)
        except StingrayError as exc:
            st.info(str(exc))
        else:
            rank_df = pd.DataFrame([{'rank': k, 'enumerated': n,
                                     'formula': exactq.rank_matrix_count(e2, e1, k, q),
                                     'match': n == exactq.rank_matrix_count(e2, e1, k, q)}
                                    for k, n in enumerate(hist)])
            st.dataframe(rank_df.style.map(color_match, subset=['match']),
                         width='stretch', hide_index=True)
