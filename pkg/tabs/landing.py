"""
tabs/landing.py — Landing page renderer (shown before the workbench is opened).
"""

import streamlit as st
from config import COLOURS


def _card(icon, title, body, cb, cb2, bd, ht, tm):
    return (
        f'<div style="background:linear-gradient(135deg,{cb},{cb2});border:1px solid {bd};'
        f'border-radius:10px;padding:1rem 1.2rem;">'
        f'<div style="font-size:1.4rem;margin-bottom:0.4rem;">{icon}</div>'
        f'<div style="color:{ht};font-weight:600;font-size:0.9rem;margin-bottom:0.3rem;">{title}</div>'
        f'<div style="color:{tm};font-size:0.82rem;line-height:1.6;">{body}</div>'
        f'</div>'
    )


def render_landing(app_version: str) -> None:
    _ht = COLOURS["header_text"]; _tm = COLOURS["text_muted"]
    _td = COLOURS["text_dim"];    _bl = COLOURS["blue"]
    _cb = COLOURS["card_bg"];     _cb2 = COLOURS["card_bg2"]
    _or = COLOURS["orange"] + "55"
    _bd = COLOURS["border"]
    look = (_cb, _cb2, _bd, _ht, _tm)
    cards = ''.join([
        _card('📐', 'Formulas &amp; Bounds',
              'Exact P(e1, e2) as a reduced fraction for any q, with its two-sided bounds, '
              'the duo fraction 1/ξ, the reducible-pair value 1 − P/ξ and the '
              'd-independent pair bound set against the earlier d-dependent one.', *look),
        _card('🕸', 'Walk Census',
              'Brute-force 3-walk, 3-arc and closed-walk counts of the bipartite q-Kneser graph, '
              'from the subspace graph and from the (A, B) frame model, next to the closed forms. '
              'Closed-walk hits are split by rank of A.', *look),
        _card('🧮', 'Group Census',
              'Every ordered pair of stingray elements in GL_d(q), classified as non-duo, '
              'reducible duo or irreducible duo, per class pair, with the fibre sizes and a '
              'sampled cross-check against the spin oracle.', *look),
        _card('🎲', 'Monte Carlo',
              'Seeded estimates of the irreducible proportion, duo fraction, reducible-pair '
              'fraction and stingray acceptance rate, each with a z-score against its exact target.', *look),
    ])
    st.markdown(f"""
    <div style="max-width:860px;margin:2rem auto 0 auto;">

    <!-- Hero tagline -->
    <p style="color:{_tm};font-size:1.05rem;line-height:1.8;margin-bottom:2rem;">
    A workbench for <b style="color:{_ht};">stingray duos</b> in finite general linear groups.
    Two stingray elements whose images are complementary generate an irreducible subgroup
    exactly when their frames sit in general position, and the proportion of such pairs
    equals the proportion of closed 3-arcs among 3-walks of a bipartite q-Kneser graph.
    Every number shown here is exact rational arithmetic, checked against brute force
    where brute force is feasible.
    </p>

    <!-- Start CTA -->
    <div style="background:linear-gradient(135deg,{_cb},{_cb2});border:1px solid {_bl}33;border-radius:10px;padding:1rem 1.4rem;margin-bottom:2rem;display:flex;align-items:center;gap:1rem;">
    <span style="font-size:2rem;">⚙️</span>
    <div>
        <div style="color:{_ht};font-weight:600;font-size:0.95rem;">Ready to start?</div>
        <div style="color:{_tm};font-size:0.85rem;">Pick e1, e2 and q in the <b style="color:{_bl};">⚙️ Parameters</b> panel, then press <b style="color:{_bl};">▶ Open workbench</b>.</div>
    </div>
    </div>

    <!-- Feature cards grid -->
    <h3 style="color:{_ht};margin:0 0 1rem 0;">What you get</h3>
    <div style="display:grid;grid-template-columns:1fr 1fr;gap:0.75rem;margin-bottom:2rem;">
    {cards}
    </div>

    <!-- Limits -->
    <h3 style="color:{_ht};margin:0 0 0.75rem 0;">⚠️ Known Limitations</h3>
    <div style="background:{_cb};border:1px solid {_or};border-radius:8px;padding:1.2rem 1.4rem;font-size:0.88rem;color:{_tm};line-height:1.75;">
    <ul style="margin:0;padding-left:1.2rem;">
    <li><b style="color:{_ht};">Censuses are desk scale</b>: every enumeration checks its size against a cap first and refuses instead of running for hours. The CLI <code>--cap</code> flag lifts the caps.</li>
    <li><b style="color:{_ht};">Group censuses need stingray classes</b>: GL_d(2) has no 1-stingray elements, so (e1, e2) with a 1 on either side reports an empty class.</li>
    <li><b style="color:{_ht};">The spin oracle is slow</b>: it is used as a sampled cross-check, never as the primary test.</li>
    <li><b style="color:{_ht};">Monte Carlo is statistical</b>: an experiment fails only when |z| exceeds the configured threshold.</li>
    </ul>
    </div>

    <p style="color:{_td};font-size:0.78rem;margin-top:1.5rem;text-align:center;">
    StingrayKneser {app_version} · exact arithmetic over GF(q) · same engine as the <code>stingray-kneser</code> CLI
    </p>

    </div>
    """, unsafe_allow_html=True)
