"""Exception hierarchy shared by every pipeline stage."""


class WatermarkError(Exception):
    """Base class. ``code`` is the stable identifier printed by the CLI."""

    code = "E_WATERMARK"


class NonAsciiCharacter(WatermarkError, ValueError):
    code = "E_NON_ASCII"

    def __init__(self, position: int, char: str):
        super().__init__(f"character {char!r} at position {position} is not 7-bit ASCII")
        self.position = position


class LengthNotMultipleOf7(WatermarkError, ValueError):
    code = "E_BIT_LENGTH"


class LengthNotMultipleOfGroup(WatermarkError, ValueError):
    code = "E_BIT_LENGTH"


class PayloadTooLarge(WatermarkError, ValueError):
    code = "E_PAYLOAD_TOO_LARGE"


class EmptyStrategy(WatermarkError, IndexError):
    code = "E_EMPTY_STRATEGY"


class StrategyExhausted(WatermarkError, IndexError):
    code = "E_STRATEGY_EXHAUSTED"

    def __init__(self, step: int):
        super().__init__(f"strategy ran out of terms at step {step}")
        self.step = step


class DimensionMismatch(WatermarkError, ValueError):
    code = "E_DIMENSION"


class WrongBlockLength(WatermarkError, ValueError):
    code = "E_BLOCK_LENGTH"


class UncorrectableBlock(WatermarkError):
    code = "E_UNCORRECTABLE"

    def __init__(self, layer: str = "rs", index: int = 0, reason: str = ""):
        msg = f"uncorrectable {layer} block {index}"
        super().__init__(f"{msg}: {reason}" if reason else msg)
        self.layer = layer
        self.index = index


class MalformedFrame(WatermarkError, ValueError):
    code = "E_MALFORMED_FRAME"


class DimensionNotDyadic(WatermarkError, ValueError):
    code = "E_NOT_DYADIC"


class InconsistentPyramid(WatermarkError, ValueError):
    code = "E_PYRAMID"


class BadSelector(WatermarkError, ValueError):
    code = "E_SELECTOR"


class BadBitIndex(WatermarkError, ValueError):
    code = "E_BIT_INDEX"


class SizeMismatch(WatermarkError, ValueError):
    code = "E_SIZE"


class PlanExhausted(WatermarkError):
    code = "E_PLAN_EXHAUSTED"


class CapacityExceeded(WatermarkError, ValueError):
    code = "E_CAPACITY"


class OutOfBounds(WatermarkError, ValueError):
    code = "E_OUT_OF_BOUNDS"


class MalformedHeader(WatermarkError, ValueError):
    code = "E_PGM_HEADER"


class UnsupportedMaxval(WatermarkError, ValueError):
    code = "E_PGM_MAXVAL"


class TruncatedRaster(WatermarkError, ValueError):
    code = "E_PGM_TRUNCATED"


class KeyFormatError(WatermarkError, ValueError):
    code = "E_KEY_FORMAT"
