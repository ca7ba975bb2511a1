"""Chaotic-iteration watermarking: a blind spatial scheme hardened with
cross-interleaved Reed-Solomon coding, and a non-blind switch-mode scheme in
the Haar wavelet domain."""

from .attacks import AttackSpec, attack_crop_pad, attack_gaussian, attack_zero_square, psnr, rms
from .chaos import Strategy, initial, iterate, negation, shift
from .circ import (
    CircConfig, InterleaverConfig, RsCode, circ_decode, circ_encode, deinterleave3, interleave3,
    rs_decode, rs_encode,
)
from .dwt_watermark import DetectionReport, detect, embed_switch, wrong_parameter_sweep
from .errors import WatermarkError
from .image_io import read_pgm, synth_test_image, write_pgm
from .keystream import (
    ChaosKey, authenticated_key, bits_to_strategy, dump_key, load_key, logistic_bits, triplet_stream,
    u_strategy,
)
from .payload import bits_to_text, frame_payload, text_to_bits, unframe_payload
from .spatial import build_plan, embed, extract, mix
from .transform import DwtPyramid, LscSelector, dwt_forward, dwt_inverse, read_lsc, read_msc, write_lsc

__version__ = "0.1.0"
