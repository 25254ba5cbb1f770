"""Practical codecs: quantization with LZW, and randomized quantization with polar coding."""

from hypergraph_coding.codecs.lzw import EncodedBlock, LzwCodebook, load_block, lzw_decode, lzw_encode, save_block
from hypergraph_coding.codecs.modular import ModularResult, modular_pipeline, quantize_stream, quantized_entropy

__all__ = [
    "EncodedBlock",
    "LzwCodebook",
    "ModularResult",
    "load_block",
    "lzw_decode",
    "lzw_encode",
    "modular_pipeline",
    "quantize_stream",
    "quantized_entropy",
    "save_block",
]
