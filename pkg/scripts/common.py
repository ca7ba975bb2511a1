"""Shared inputs for the experiment scripts."""

# 109 ASCII characters, 763 bits at 7 bits per character
MESSAGE = (
    "Chaotic iterations scatter these words over two low bit planes;\n"
    "Reed-Solomon parity brings them back intact!!"
)
