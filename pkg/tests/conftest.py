import pytest

from eqls import matter, zstates


@pytest.fixture(scope="session")
def registry():
    return matter.load_registry()


def solve_surface(surface, count=2):
    spec = zstates.RegularizedImage(
        v0_ev=surface.barrier_v0_ev,
        eps_r=surface.dielectric_constant,
        b_A=surface.scattering_length_A,
    )
    return zstates.solve_bound_states(zstates.build_potential(spec), count)


@pytest.fixture(scope="session")
def he_result(registry):
    return solve_surface(registry.get_surface("liquid 4He"))


@pytest.fixture(scope="session")
def ne_result(registry):
    return solve_surface(registry.get_surface("solid Ne"))
