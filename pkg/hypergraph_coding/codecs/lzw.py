"""Variable-width LZW over a finite symbol alphabet.

The dictionary starts with the ``m`` single symbols and is never reset. Before each
emission the code width is ceil(log2(dictionary size)); with ``k`` codes already
emitted the dictionary holds ``m + k`` entries, so encoder and decoder agree on
every width without an end-of-stream code.
"""

import os
from typing import Dict, List, Optional, Sequence, Tuple, Union

import bitstring
import structlog
from bitstring import BitArray, Bits, ConstBitStream, ReadError
from pydantic import BaseModel, ConfigDict, Field

from hypergraph_coding.core.errors import CodecPreconditionError, PreconditionViolated

logger = structlog.get_logger(__name__)

HEADER_FORMAT = "uint:64, uint:16"
MAX_ALPHABET = 2**16 - 1


def code_width(entries: int) -> int:
    """ceil(log2(entries)), zero for a one-entry dictionary."""
    return (entries - 1).bit_length()


class LzwCodebook:
    """Growing LZW dictionary shared by the encoder and the decoder.

    Entries are keyed by (prefix code, next symbol), which keeps the dictionary
    prefix-closed: every stored string extends a stored string by one symbol.
    """

    def __init__(self, alphabet_size: int):
        if not 1 <= alphabet_size <= MAX_ALPHABET:
            raise PreconditionViolated(f"alphabet size must lie in [1, {MAX_ALPHABET}], got {alphabet_size}")
        self.alphabet_size = alphabet_size
        self.entries: Dict[Tuple[int, int], int] = {}
        self.strings: List[Tuple[int, ...]] = [(s,) for s in range(alphabet_size)]

    @property
    def size(self) -> int:
        return len(self.strings)

    @property
    def width(self) -> int:
        return code_width(self.size)

    def lookup(self, prefix: int, symbol: int) -> Optional[int]:
        return self.entries.get((prefix, symbol))

    def add(self, prefix: int, symbol: int) -> int:
        code = self.size
        self.entries[(prefix, symbol)] = code
        self.strings.append(self.strings[prefix] + (symbol,))
        return code


class EncodedBlock(BaseModel):
    """An LZW bit stream together with the source length it decodes to."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    bits: Bits
    n: int = Field(..., ge=1)
    alphabet_size: int = Field(..., ge=1)

    @property
    def rate(self) -> float:
        """Emitted bits per source symbol."""
        return len(self.bits) / self.n


def lzw_encode(symbols: Sequence[int], alphabet_size: Optional[int] = None) -> EncodedBlock:
    """Compress a symbol sequence.

    Args:
        symbols: Nonempty sequence over ``range(alphabet_size)``
        alphabet_size: Alphabet size ``m``, defaults to ``max(symbols) + 1``

    Returns:
        The encoded block

    Raises:
        PreconditionViolated: If the sequence is empty or leaves the alphabet
    """
    symbols = [int(s) for s in symbols]
    if not symbols:
        raise PreconditionViolated("cannot encode an empty sequence")
    m = max(symbols) + 1 if alphabet_size is None else alphabet_size
    if min(symbols) < 0 or max(symbols) >= m:
        raise PreconditionViolated(f"symbols must lie in [0, {m})")

    book = LzwCodebook(m)
    out = BitArray()

    def emit(code: int) -> None:
        width = book.width
        if width:
            out.append(Bits(uint=code, length=width))

    prefix = symbols[0]
    for symbol in symbols[1:]:
        extended = book.lookup(prefix, symbol)
        if extended is not None:
            prefix = extended
            continue
        emit(prefix)
        book.add(prefix, symbol)
        prefix = symbol
    emit(prefix)

    block = EncodedBlock(bits=Bits(out), n=len(symbols), alphabet_size=m)
    logger.debug("lzw_encoded", n=block.n, alphabet_size=m, bits=len(block.bits), entries=book.size)
    return block


def lzw_decode(block: EncodedBlock) -> List[int]:
    """Invert :func:`lzw_encode`.

    Raises:
        CodecPreconditionError: If the stream is truncated or holds an impossible code
    """
    stream = ConstBitStream(block.bits)
    book = LzwCodebook(block.alphabet_size)
    out: List[int] = []
    previous: Optional[int] = None

    while len(out) < block.n:
        # after the first code the dictionary lags the encoder by one entry
        width = code_width(book.size + (previous is not None))
        try:
            code = stream.read(f"uint:{width}") if width else 0
        except ReadError as e:
            raise CodecPreconditionError(f"LZW stream ended after {len(out)} of {block.n} symbols") from e

        if code < book.size:
            current = book.strings[code]
        elif code == book.size and previous is not None:
            current = book.strings[previous] + book.strings[previous][:1]
        else:
            raise CodecPreconditionError(f"invalid LZW code {code} with {book.size} dictionary entries")

        if previous is not None:
            book.add(previous, current[0])
        out.extend(current)
        previous = code

    if len(out) != block.n:
        raise CodecPreconditionError(f"LZW stream decodes to {len(out)} symbols, expected {block.n}")
    return out


def save_block(path: Union[str, os.PathLike], block: EncodedBlock) -> None:
    """Write a block as: 8-byte big-endian length, 2-byte alphabet size, bits padded to a byte."""
    payload = bitstring.pack(HEADER_FORMAT, block.n, block.alphabet_size)
    payload.append(block.bits)
    with open(path, "wb") as f:
        f.write(payload.tobytes())


def load_block(path: Union[str, os.PathLike]) -> EncodedBlock:
    """Read a block written by :func:`save_block`; trailing padding bits are kept but never decoded."""
    with open(path, "rb") as f:
        stream = ConstBitStream(f.read())
    try:
        n, alphabet_size = stream.readlist(HEADER_FORMAT)
    except ReadError as e:
        raise CodecPreconditionError(f"{path} is too short to hold a block header") from e
    return EncodedBlock(bits=Bits(stream[stream.pos :]), n=n, alphabet_size=alphabet_size)
