import streamlit as st
import pandas as pd

from config import COLOURS, DEFAULT_SEED, DEFAULT_TRIALS, MAX_Q
from errors import StingrayError
from field import prime_factors
from models import KneserParams

# ── Engine (pure Python, no Streamlit dependency) ────────────────────────────
import census
import report
import sampler
from report import build_html_report

# ==========================================
# StingrayKneser v1.0
# ==========================================
#
# Orchestration only: every number on screen comes from exactq / census /
# sampler through the cached wrappers below, and every table is built by
# report.py so the dashboard, the CLI and the HTML export agree cell for cell.
# ==========================================

APP_VERSION = "v1.0"
st.set_page_config(page_title=f"StingrayKneser {APP_VERSION}", layout="wide")

# Prime powers offered in the sidebar. Formulas accept any q ≥ 2; censuses
# and sampling need a real field.
FIELD_ORDERS = [q for q in range(2, 33) if len(prime_factors(q)) == 1]


# ── Cached engine wrappers ────────────────────────────────────────────────────

@st.cache_data(show_spinner='📐 Evaluating formulas…')
def get_formulas(e1: int, e2: int, qs: tuple) -> pd.DataFrame:
    """Thin cache wrapper around report.formulas_frame — exact rows per q."""
    return report.formulas_frame((e1, e2, q) for q in qs)


@st.cache_data(show_spinner='🕸 Enumerating the q-Kneser graph…')
def get_walk_censuses(e1: int, e2: int, q: int, d: int) -> list:
    """Graph census (ambient d) plus the (A,B) frame census when d = e1 + e2."""
    out = [census.graph_walk_census(e1, e2, q, d=d)]
    if d == e1 + e2:
        out.append(census.ab_walk_census(e1, e2, q))
    return out


@st.cache_data(show_spinner='🧮 Classifying every stingray pair…', max_entries=4)
def get_duo_census(d: int, q: int, e1: int, e2: int, spin_all: bool):
    """Thin cache wrapper around census.exhaustive_duo_census."""
    return census.exhaustive_duo_census(d, q, e1, e2, spin_all=spin_all)


@st.cache_data(show_spinner='🎲 Sampling…')
def get_trial(kind: str, e1: int, e2: int, q: int, trials: int, seed: int, mode: str):
    """One seeded Monte Carlo experiment. Cached on every parameter, so the
    same seed always shows the same report."""
    if kind == 'irreducible':
        return sampler.estimate_irreducible_proportion(e1, e2, q, trials, seed, mode)
    if kind == 'duo-fraction':
        return sampler.estimate_duo_fraction(e1, e2, q, trials, seed)
    if kind == 'reducible-pair':
        return sampler.estimate_reducible_pair_fraction(e1, e2, q, trials, seed)
    return sampler.estimate_acceptance_rate(e1 + e2, q, e1, trials, seed)


def main():
    st.markdown("""
        <style>
        @import url('https://fonts.googleapis.com/css2?family=IBM+Plex+Mono:wght@400;600&family=IBM+Plex+Sans:wght@300;400;600&display=swap');

        .stApp { background-color: #0a0e17; color: #c9d1d9; font-family: 'IBM Plex Sans', sans-serif; }
        div[data-testid="stMetricValue"] { font-size: 1.3rem !important; color: #00cc96; font-family: 'IBM Plex Mono', monospace; font-weight: 600; }
        div[data-testid="stMetricLabel"] { color: #8b949e; font-size: 0.78rem !important; text-transform: uppercase; letter-spacing: 0.05em; }
        [data-testid="stExpander"] { background: #111827; border-radius: 10px;
            border: 1px solid #1f2937; margin-bottom: 8px; }
        .stTabs [data-baseweb="tab-list"] {
            position: sticky; top: 3.5rem; z-index: 100;
            background-color: #0a0e17;
            gap: 8px; border-bottom: 1px solid #1f2937;
            box-shadow: 0 4px 12px rgba(0,0,0,0.5);
        }
        .stTabs [data-baseweb="tab"] { background-color: #0f1520;
            border-radius: 6px 6px 0px 0px; padding: 10px 20px; font-size: 0.9rem; }
        </style>
    """, unsafe_allow_html=True)

    st.markdown(
        f'<div style="display:flex;align-items:center;gap:1.25rem;margin-bottom:0.5rem;">'
        f'<span style="font-size:2rem;font-weight:700;color:{COLOURS["header_text"]};">'
        f'🪼 StingrayKneser {APP_VERSION}</span>'
        f'<span style="font-size:0.82rem;color:{COLOURS["text_dim"]};font-style:italic;">'
        f'exact q-Kneser walk proportions · stingray duo censuses</span>'
        f'</div>',
        unsafe_allow_html=True
    )

    # ── Sidebar parameter panel ───────────────────────────────────────────────
    with st.sidebar:
        st.header('⚙️ Parameters')
        e1 = int(st.number_input('e1', min_value=1, max_value=12, value=2, step=1))
        e2 = int(st.number_input('e2', min_value=1, max_value=12, value=2, step=1))
        q = int(st.selectbox('q (field order)', FIELD_ORDERS, index=0))
        q_max = int(st.slider('Chart q range up to', min_value=3, max_value=64, value=16))
        trials = int(st.number_input('Monte Carlo trials', min_value=1_000, max_value=10_000_000,
                                     value=DEFAULT_TRIALS, step=10_000))
        seed = int(st.number_input('Seed', min_value=0, value=DEFAULT_SEED, step=1))
        if st.button('▶ Open workbench', use_container_width=True):
            st.session_state['started'] = True

    if not st.session_state.get('started'):
        render_landing(APP_VERSION)
        st.stop()

    params, swapped = KneserParams.normalised(e1, e2, q)
    if swapped:
        st.info(f'Normalised (e1, e2) = ({e1}, {e2}) to ({params.e1}, {params.e2}); '
                'every formula assumes e2 ≤ e1.')
    e1, e2 = params.e1, params.e2
    qs = tuple(range(2, max(q_max, q) + 1))

    # ── Report download sidebar ──────────────────────────────────────────────
    with st.sidebar:
        st.markdown('---')
        st.markdown('#### 📄 Export Report')
        try:
            _report_html = build_html_report(e1, e2, [x for x in qs if x <= MAX_Q],
                                             reports=st.session_state.get('mc_reports'))
            st.download_button(
                label='⬇️ Download HTML Report',
                data=_report_html,
                file_name=f'stingraykneser_{e1}_{e2}.html',
                mime='text/html',
                use_container_width=True,
                help='Self-contained HTML report: formula scorecard, P versus q chart and bound grid.',
            )
        except StingrayError as exc:
            st.caption(f'Report unavailable: {exc}')

    # ── TABS ──────────────────────────────────────────────────────────────────
    tab1, tab2, tab3, tab4 = st.tabs([
        '📐 Formulas & Bounds',
        '🕸 Walk Census',
        '🧮 Group Census',
        '🎲 Monte Carlo',
    ])
    with tab1: render_tab1(e1, e2, q, qs, get_formulas)
    with tab2: render_tab2(e1, e2, q, get_walk_censuses)
    with tab3: render_tab3(e1, e2, q, get_duo_census)
    with tab4: render_tab4(e1, e2, q, trials, seed, get_trial)


# ══════════════════════════════════════════════════════════════════════════════
# TAB RENDERERS  (one file per tab in tabs/)
# ══════════════════════════════════════════════════════════════════════════════
from tabs.landing             import render_landing
from tabs.tab1_formulas       import render_tab1
from tabs.tab2_walk_census    import render_tab2
from tabs.tab3_group_census   import render_tab3
from tabs.tab4_monte_carlo    import render_tab4


main()
