"""测试公共夹具和随机实例生成"""

import itertools
import os
import random
from typing import List, Sequence

import pytest

from chain_codes.algebra import MultiPoly, RingSpec, parse_poly, parse_poly_list
from chain_codes.utils.config import reset_config


@pytest.fixture(autouse=True)
def _clean_config(monkeypatch):
    """每个测试使用默认配置，不受外部 CHAIN_CODES_* 环境变量影响"""
    for name in list(os.environ):
        if name.startswith("CHAIN_CODES_"):
            monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def z4() -> RingSpec:
    return RingSpec.integer_modular(2, 2)


@pytest.fixture
def z9() -> RingSpec:
    return RingSpec.integer_modular(3, 2)


@pytest.fixture
def z25() -> RingSpec:
    return RingSpec.integer_modular(5, 2)


@pytest.fixture
def f4g() -> RingSpec:
    """F_4 + γF_4, γ^2 = 0"""
    return RingSpec.gamma_extension(2, 2, 2)


def poly(text: str, spec: RingSpec, dims: Sequence[int]) -> MultiPoly:
    return parse_poly(text, spec, dims)


def polys(text: str, spec: RingSpec, dims: Sequence[int]) -> List[MultiPoly]:
    return parse_poly_list(text, spec, dims)


def random_poly(
    rng: random.Random, spec: RingSpec, dims: Sequence[int], density: float = 0.5
) -> MultiPoly:
    """每个系数以 density 的概率取随机非零元素，再随机乘以 γ 的幂"""
    elements = list(spec.elements())[1:]
    dims = tuple(dims)
    terms = {}
    for exponent in itertools.product(*(range(m) for m in dims)):
        if rng.random() < density:
            terms[exponent] = spec.element(rng.choice(elements))
    f = MultiPoly.from_terms(spec, dims, terms)
    return f.scale(spec.element(spec.gamma_power(rng.randrange(spec.nu))))


def random_gens(
    rng: random.Random, spec: RingSpec, dims: Sequence[int], max_count: int = 3
) -> List[MultiPoly]:
    return [random_poly(rng, spec, dims) for _ in range(rng.randint(1, max_count))]
