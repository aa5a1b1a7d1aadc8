# -*- coding: utf-8 -*-
"""Reproducible random number substreams.

A root seed is split into independent substreams by appending integer keys to the
``spawn_key`` of a ``numpy.random.SeedSequence``. Substreams feed the counter-based
Philox bit generator, so a stream depends only on its keys and never on the order
in which replications are executed.
"""
import zlib

import numpy as np

from .exceptions import ConfigurationError

ROLE_DATA = 0
ROLE_MULTIPLIERS = 1


def as_seed_sequence(rng):
    """Convert a seed, a SeedSequence or a Generator to a SeedSequence.

    Args:
        rng: An integer seed, a ``numpy.random.SeedSequence``, a
            ``numpy.random.Generator`` or None for seed 0.
    """
    if rng is None:
        return np.random.SeedSequence(0)
    if isinstance(rng, np.random.SeedSequence):
        return rng
    if isinstance(rng, np.random.Generator):
        return np.random.SeedSequence(int(rng.integers(0, 2 ** 63)))
    try:
        seed = int(rng)
    except (TypeError, ValueError):
        raise ConfigurationError('Invalid random seed: %r' % (rng,))
    if seed < 0:
        raise ConfigurationError('Random seed must be non-negative. Got %d.' % seed)
    return np.random.SeedSequence(seed)


def substream(seed_seq, *keys):
    """Child SeedSequence identified by integer keys."""
    seed_seq = as_seed_sequence(seed_seq)
    return np.random.SeedSequence(
        entropy=seed_seq.entropy,
        spawn_key=tuple(seed_seq.spawn_key) + tuple(int(k) for k in keys),
        pool_size=seed_seq.pool_size
    )


def generator(seed_seq, *keys):
    """Philox generator for the substream identified by keys."""
    return np.random.Generator(np.random.Philox(substream(seed_seq, *keys)))


def stable_key(*parts):
    """Integer key for a cell identity that does not change between processes."""
    text = '|'.join(str(p) for p in parts)
    return zlib.crc32(text.encode('utf-8')) & 0xffffffff


def as_generator(rng):
    """Return rng if it is a Generator, else a Philox generator seeded from it."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.Generator(np.random.Philox(as_seed_sequence(rng)))
