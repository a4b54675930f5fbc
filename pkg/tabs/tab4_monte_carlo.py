"""
tabs/tab4_monte_carlo.py — Monte Carlo tab renderer.
"""

import plotly.graph_objects as go
import streamlit as st

import report
from config import COLOURS, Z_THRESHOLD
from errors import EmptyClass, StingrayError
from sampler import MODES
from ui_components import chart_layout, color_z, display_frame, fmt_rational, metric_card, metric_row

KINDS = ['irreducible', 'duo-fraction', 'reducible-pair', 'acceptance']


def _estimate_chart(reports):
    """Estimate ± 2 stderr per run against the exact target."""
    C = COLOURS
    labels = [f'{i + 1}. {r.kind} q={r.q} ({r.e1},{r.e2})' for i, r in enumerate(reports)]
    fig = go.Figure()
    fig.add_trace(go.Scatter(
        x=labels, y=[r.estimate for r in reports], mode='markers', name='estimate',
        marker=dict(color=C['blue'], size=9),
        error_y=dict(type='data', array=[2 * r.stderr for r in reports], color=C['blue']),
    ))
    fig.add_trace(go.Scatter(
        x=labels, y=[float(r.exact_target) for r in reports], mode='markers', name='exact target',
        marker=dict(color=C['orange'], symbol='line-ew-open', size=22, line=dict(width=2)),
    ))
    fig.update_layout(**chart_layout('Estimates (± 2 stderr) against exact targets', height=320))
    return fig


def render_tab4(e1, e2, q, trials, seed, get_trial):
    """Tab 4 — seeded Monte Carlo experiments with z-scores."""
    st.markdown(f'### 🎲 Monte Carlo · q = {q}')
    st.caption(
        f'Each run is reproducible from its seed. An experiment passes when |z| < {Z_THRESHOLD}. '
        'uniform-group draws g1, g2 uniformly from GL_d(q) and keeps the stingray duos; '
        'fixed-class-pair draws conjugates of fixed class representatives.'
    )

    c1, c2, c3 = st.columns([1, 1, 1])
    kind = c1.selectbox('Experiment', KINDS, index=0, key='mc_kind')
    mode = c2.selectbox('Sampling mode', MODES, index=0, key='mc_mode',
                        disabled=kind != 'irreducible')
    with c3:
        st.write('')
        run = st.button('▶ Run experiment', key='mc_run', use_container_width=True)
        if st.button('🗑 Clear runs', key='mc_clear', use_container_width=True):
            st.session_state['mc_reports'] = []

    if run:
        try:
            r = get_trial(kind, e1, e2, q, trials, seed, mode if kind == 'irreducible' else 'fixed-class-pair')
        except EmptyClass as exc:
            st.warning(f'No stingray elements: {exc}')
        except StingrayError as exc:
            st.warning(f'Experiment refused: {exc}')
        else:
            st.session_state.setdefault('mc_reports', []).append(r)

    reports = st.session_state.get('mc_reports', [])
    if not reports:
        st.info('No runs yet. Pick an experiment and press ▶ Run experiment.')
        return

    last = reports[-1]
    st.markdown(metric_row([
        metric_card('Estimate', f'{last.estimate:.6f}', f'± {last.stderr:.6f}'),
        metric_card('Exact target', fmt_rational(last.exact_target), f'{float(last.exact_target):.6f}'),
        metric_card('z', f'{last.z_score:+.2f}', 'PASS' if last.passed(Z_THRESHOLD) else 'FAIL'),
        metric_card('Hits / trials', f'{last.hits:,} / {last.trials:,}', f'{last.wall_time_s:.2f} s'),
    ]), unsafe_allow_html=True)

    st.plotly_chart(_estimate_chart(reports), width='stretch', config={'displayModeBar': False})
    df = report.trial_frame(reports)
    st.dataframe(display_frame(df).style.map(color_z, subset=['z']), width='stretch', hide_index=True)
    st.caption('Runs are kept for this session and included in the HTML report download.')
