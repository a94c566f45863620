"""Shared randomized-value generators (seeded per test for reproducibility)."""

from qonsager import LaurentPoly, NcPoly, RingElement


def rand_laurent(rng, max_terms=4, max_exp=6, max_coeff=9):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[rng.randint(-max_exp, max_exp)] = rng.randint(-max_coeff, max_coeff)
    return LaurentPoly(terms)


def rand_ring(rng, max_rho=2):
    terms = {}
    for _ in range(rng.randint(0, 3)):
        key = (rng.randint(0, max_rho), rng.randint(0, max_rho))
        terms[key] = rand_laurent(rng)
    return RingElement({k: v for k, v in terms.items() if not v.is_zero()})


def rand_word(rng, max_len=8):
    return "".join(rng.choice("as") for _ in range(rng.randint(0, max_len)))


def rand_ncpoly(rng, max_terms=4, max_len=6):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        coeff = rand_ring(rng)
        if not coeff.is_zero():
            terms[rand_word(rng, max_len)] = coeff
    return NcPoly(terms)
