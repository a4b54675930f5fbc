"""
tabs/tab3_group_census.py — Group Census tab renderer.
"""

import streamlit as st

import census
import exactq
import report
from errors import EmptyClass, StingrayError
from ui_components import display_frame, fmt_rational, metric_card, metric_row, status_chip


def render_tab3(e1, e2, q, get_duo_census):
    """Tab 3 — exhaustive classification of stingray pairs in GL_d(q)."""
    st.markdown(f'### 🧮 Group Census · GL_d({q})')
    st.caption(
        'Builds every e1- and e2-stingray class of GL_d(q) and classifies each ordered pair '
        '(g1, g2) ∈ C1 × C2 as non-duo, reducible duo or irreducible duo. Irreducibility is decided '
        'by the frame criterion; a stride of pairs is re-checked with the spin oracle.'
    )

    c1, c2 = st.columns([1, 3])
    with c1:
        d = int(st.number_input('Ambient d', min_value=e1 + e2, max_value=e1 + e2 + 2,
                                value=e1 + e2, step=1, key='group_d'))
        spin_all = st.checkbox('Spin-check every pair', value=False, key='group_spin_all')
        run = st.button('▶ Run census', key='group_run', use_container_width=True)
    with c2:
        try:
            cards = [metric_card('Class size (e1)', f'{exactq.class_size(d, e1, q):,}'),
                     metric_card('Classes (e1)', str(exactq.stingray_class_count(e1, q))),
                     metric_card('Classes (e2)', str(exactq.stingray_class_count(e2, q)))]
            if d == e1 + e2:
                cards.append(metric_card('Duo fraction target', fmt_rational(exactq.duo_fraction(e1, e2, q))))
                cards.append(metric_card('Fibre', str(exactq.duo_fibre(e1, e2, q))))
            st.markdown(metric_row(cards), unsafe_allow_html=True)
        except StingrayError as exc:
            st.caption(str(exc))

    if run:
        st.session_state['group_key'] = (e1, e2, q, d, spin_all)
    if st.session_state.get('group_key') != (e1, e2, q, d, spin_all):
        st.info('Press ▶ Run census to enumerate. GL_3(2) and GL_3(3) finish quickly; '
                'GL_4(2) (2, 2) classifies 573 440 pairs.')
        return

    try:
        result = get_duo_census(d, q, e1, e2, spin_all)
    except EmptyClass as exc:
        st.warning(f'No stingray elements: {exc}')
        return
    except StingrayError as exc:
        st.warning(f'Census refused: {exc}')
        return

    s = report.duo_census_summary(result)
    st.markdown(metric_row([
        metric_card('Pairs', f"{s['pairs']:,}"),
        metric_card('Duos', f"{s['duos']:,}", fmt_rational(s['duo_fraction'])),
        metric_card('Irreducible', f"{s['irreducible_duo']:,}", fmt_rational(s['irreducible_fraction'])),
        metric_card('Spin checks', f"{s['spin_checked']:,}", f"{s['spin_mismatches']} mismatches"),
        metric_card('Sweep', s['sweep'], f"{s['wall_time_s']} s"),
    ]), unsafe_allow_html=True)

    chips = []
    if d == e1 + e2:
        P = exactq.proportion_P(e1, e2, q)
        chips.append(status_chip(f'irreducible fraction = P = {fmt_rational(P)}',
                                 'pass' if result.irreducible_fraction == P else 'fail'))
    fibre = census.verify_fibre_constancy(d, q, e1, e2, census=result)
    chips.append(status_chip(f'fibre size {fibre.expected} everywhere', 'pass' if fibre.constant else 'fail'))
    if d == e1 + e2:
        chips.append(status_chip('every 3-walk hit', 'pass' if fibre.surjective else 'fail'))
    chips.append(status_chip('spin oracle agrees', 'pass' if result.spin_mismatches == 0 else 'fail'))
    st.markdown(''.join(chips), unsafe_allow_html=True)

    st.markdown('#### Per class pair')
    df = report.duo_census_frame(result)
    if df.empty:
        st.info('No class pairs.')
        return
    st.dataframe(display_frame(df), width='stretch', hide_index=True)
    if d != e1 + e2:
        st.caption(f'd = {d} > e1 + e2: images need not be complementary, so no P target is shown.')
