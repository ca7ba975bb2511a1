from dataclasses import replace

import numpy as np
import pytest

from chaoswm.attacks import psnr, rms
from chaoswm.errors import BadSelector, DimensionMismatch, DimensionNotDyadic
from chaoswm.keystream import ChaosKey
from chaoswm.payload import text_to_bits
from chaoswm.dwt_watermark import (
    DEFAULT_THRESHOLD, detect, embed_switch, switch_steps, sweep_cases, wrong_parameter_sweep,
)
from chaoswm.transform import LscSelector, dwt_forward, read_lsc

HH2 = LscSelector()
LL1 = LscSelector("dwt", "LL", 1, 1)


@pytest.fixture(scope="module")
def wm(message):
    return text_to_bits(message)


@pytest.fixture(scope="module")
def marked(cover512, wm):
    return {sel.label: embed_switch(cover512, wm, ChaosKey(), sel) for sel in (HH2, LL1)}


def test_step_count():
    assert switch_steps(np.ones(763, np.uint8), ChaosKey()) == 2000
    assert switch_steps(np.ones(763, np.uint8), ChaosKey(iterations=19950)) == 1995


def test_zero_steps_leaves_image_unchanged(cover512, wm):
    key = ChaosKey(iterations=5)  # fewer bits than one strategy term
    assert switch_steps(wm, key) == 0
    for sel in (HH2, LL1):
        assert np.array_equal(embed_switch(cover512, wm, key, sel), cover512)


@pytest.mark.parametrize("label,min_psnr,max_change", [("HH2", 50, 2), ("LL1", 55, 3)])
def test_imperceptibility(marked, cover512, label, min_psnr, max_change):
    out = marked[label]
    assert psnr(cover512, out) >= min_psnr
    assert np.abs(out.astype(int) - cover512).max() <= max_change


def test_switched_cells_match_strategy_parity(cover512, wm):
    from chaoswm.dwt_watermark import _strategies

    before = read_lsc(cover512, HH2)
    _, u = _strategies(wm, ChaosKey(), before.size)
    parity = np.bincount(u.take(len(u)), minlength=before.size) % 2
    after = read_lsc(embed_switch(cover512, wm, ChaosKey(), HH2), HH2)
    assert np.mean((before ^ after) == parity) > 0.99


@pytest.mark.parametrize("sel", [HH2, LL1])
def test_correct_parameters_detect_exactly(marked, cover512, wm, sel):
    report = detect(marked[sel.label], cover512, wm, ChaosKey(), sel)
    assert report.rms == 0.0
    assert report.watermarked and report.verdict == "watermarked"


def test_unwatermarked_hh2_rejected(cover512, wm):
    report = detect(cover512, cover512, wm, ChaosKey(), HH2)
    assert report.rms > DEFAULT_THRESHOLD
    assert report.verdict == "not-watermarked"


def test_sweep_rows_and_ordering(marked, cover512, wm):
    rows = wrong_parameter_sweep(marked["HH2"], cover512, wm, ChaosKey(), HH2)
    labels = [r.label for r in rows]
    assert labels == ["reference", "mu=3.99987", "x0=0.64", "iterations=19950", "msb=[5,6,7]",
                      "band=HH1", "s0=2", "lsb=[1]"]
    ref = rows[0].rms
    assert all(r.rms > ref for r in rows[1:])
    assert rows == wrong_parameter_sweep(marked["HH2"], cover512, wm, ChaosKey(), HH2)


def test_each_sweep_case_changes_one_thing():
    key = ChaosKey()
    cases = sweep_cases(key, HH2)
    assert cases[0] == ("reference", key, HH2, False)
    for label, k, s, _ in cases[1:]:
        changed = sum(getattr(k, f) != getattr(key, f) for f in ("mu", "x0", "iterations", "msb_set", "u0"))
        changed += s != HH2
        assert changed == 1 or label == "msb=[5,6,7]"


def test_authenticated_mode(cover512, wm):
    out = embed_switch(cover512, wm, ChaosKey(), HH2, authenticate=True)
    assert detect(out, cover512, wm, ChaosKey(), HH2, authenticate=True).rms == 0.0
    assert detect(out, cover512, wm, ChaosKey(), HH2).rms > 0.5
    wrong = detect(out, cover512, wm, replace(ChaosKey(), msb_set=(5, 6, 7)), HH2, authenticate=True)
    assert wrong.rms > 0.5


def test_noise_counts_as_tampering(marked, cover512, wm):
    from chaoswm.attacks import attack_gaussian

    noisy = attack_gaussian(marked["HH2"], 1.0, 3)
    assert detect(noisy, cover512, wm, ChaosKey(), HH2).rms > DEFAULT_THRESHOLD


def test_report_text(marked, cover512, wm):
    text = detect(marked["HH2"], cover512, wm, ChaosKey(), HH2).to_text()
    fields = dict(line.split("=", 1) for line in text.strip().splitlines())
    assert fields["verdict"] == "watermarked"
    assert float(fields["rms"]) == 0.0
    assert fields["selector"] == "HH2"
    assert fields["key"] == ChaosKey().fingerprint()


def test_inputs_not_modified(marked, cover512, wm):
    a, b = marked["HH2"].copy(), cover512.copy()
    detect(marked["HH2"], cover512, wm, ChaosKey(), HH2)
    assert np.array_equal(a, marked["HH2"]) and np.array_equal(b, cover512)


def test_argument_checks(cover512, wm):
    with pytest.raises(BadSelector):
        embed_switch(cover512, wm, ChaosKey(), LscSelector("pixel"))
    with pytest.raises(DimensionMismatch):
        detect(cover512[:256], cover512, wm, ChaosKey())
    with pytest.raises(DimensionNotDyadic):
        embed_switch(np.zeros((30, 30), np.uint8), wm, ChaosKey())


def test_coefficient_space_round_trip_is_exact(cover512, wm):
    from chaoswm.chaos import iterate, negation
    from chaoswm.dwt_watermark import _strategies

    pyr = dwt_forward(cover512, 2)
    state = read_lsc(pyr, HH2)
    _, u = _strategies(wm, ChaosKey(), state.size)
    twice = iterate(iterate(state, u, negation, len(u)), u, negation, len(u))
    assert rms(state, twice) == 0.0
