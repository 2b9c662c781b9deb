"""
Redes de ejemplo y estrategias de hypothesis compartidas por los tests de las apps.
"""
from __future__ import annotations

from hypothesis import settings, strategies as st

from estimacion.evidencial.tipos import MassVector, PlaceSet
from estimacion.nucleo_red.tipos import PetriNet, Receptivity


def net_from_arcs(n: int, arcos: list[tuple[int, int]], name: str = 'red') -> PetriNet:
    """Una transición por par (plaza de entrada, plaza de salida)"""
    m = len(arcos)
    pre = [[0] * m for _ in range(n)]
    post = [[0] * m for _ in range(n)]
    for j, (origen, destino) in enumerate(arcos):
        pre[origen][j] = 1
        post[destino][j] = 1
    return PetriNet(
        place_names=tuple(f"P{i + 1}" for i in range(n)),
        transition_names=tuple(f"t{j + 1}" for j in range(m)),
        pre=pre,
        post=post,
        name=name,
    )


def sequential_net(n: int = 3) -> PetriNet:
    """Ciclo P1 -> P2 -> ... -> Pn -> P1"""
    return net_from_arcs(n, [(i, (i + 1) % n) for i in range(n)], name=f"secuencial_{n}")


def conflict_net() -> PetriNet:
    """P1 en conflicto entre t1 (-> P2) y t2 (-> P3); t3 y t4 vuelven a P1"""
    return net_from_arcs(3, [(0, 1), (0, 2), (1, 0), (2, 0)], name='conflicto_3')


def bits(texto: str) -> Receptivity:
    return Receptivity.from_string(texto.replace(',', '').replace(' ', ''))


def ps(*places: int) -> PlaceSet:
    """PlaceSet a partir de números de plaza desde 1: ps(1, 3) = {P1,P3}"""
    return PlaceSet(frozenset(p - 1 for p in places))


# ==================== ESTRATEGIAS ====================

# Sin deadline: la primera llamada sobre cada red llena los cachés de validación
settings.register_profile("evinet", deadline=None)
settings.load_profile("evinet")


@st.composite
def valid_nets(draw, min_places: int = 2, max_places: int = 8, max_transitions: int = 10):
    n = draw(st.integers(min_value=min_places, max_value=max_places))
    par = st.tuples(
        st.integers(min_value=0, max_value=n - 1),
        st.integers(min_value=0, max_value=n - 1),
    ).filter(lambda arco: arco[0] != arco[1])
    arcos = draw(st.lists(par, min_size=1, max_size=max_transitions))
    return net_from_arcs(n, arcos)


@st.composite
def conflict_free_nets(draw, min_places: int = 2, max_places: int = 8):
    """Redes válidas con a lo sumo una transición de salida por plaza"""
    n = draw(st.integers(min_value=min_places, max_value=max_places))
    arcos = []
    for plaza in range(n):
        otras = [p for p in range(n) if p != plaza]
        destino = draw(st.none() | st.sampled_from(otras))
        if destino is not None:
            arcos.append((plaza, destino))
    if not arcos:
        arcos.append((0, draw(st.integers(min_value=1, max_value=n - 1))))
    return net_from_arcs(n, arcos)


@st.composite
def sequential_nets(draw, max_places: int = 6):
    return sequential_net(draw(st.integers(min_value=2, max_value=max_places)))


@st.composite
def admissible_receptivities(draw, net: PetriNet):
    """Sortea los bits y deja a lo sumo una transición verdadera por plaza"""
    crudos = draw(st.lists(st.booleans(), min_size=net.m, max_size=net.m))
    bits_ = list(crudos)
    for plaza in range(net.n):
        verdadera = False
        for j in net.output_transitions(plaza):
            if bits_[j] and verdadera:
                bits_[j] = False
            verdadera = verdadera or bits_[j]
    return Receptivity(tuple(bits_))


@st.composite
def place_sets(draw, n: int):
    indices = draw(st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1))
    return PlaceSet(frozenset(indices))


@st.composite
def masses(draw, n: int, max_focal: int = 4):
    """Hasta max_focal elementos focales distintos con pesos enteros normalizados"""
    conjuntos = draw(st.lists(place_sets(n), min_size=1, max_size=max_focal, unique=True))
    pesos = draw(st.lists(
        st.integers(min_value=1, max_value=20), min_size=len(conjuntos), max_size=len(conjuntos)
    ))
    total = sum(pesos)
    return MassVector({x: peso / total for x, peso in zip(conjuntos, pesos)})


@st.composite
def categorical_masses(draw, n: int):
    return MassVector.categorical(draw(place_sets(n)))
