use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Entry {
    pub id: &'static str,
    /// Parameter names and their JSON shapes.
    pub params: &'static [(&'static str, &'static str)],
    pub summary: &'static str,
}

const fn e(id: &'static str, params: &'static [(&'static str, &'static str)], summary: &'static str) -> Entry {
    Entry { id, params, summary }
}

pub const MAPS: &[Entry] = &[
    e("identity", &[("dim", "integer")], "identity on the ball of C^dim"),
    e("koebe", &[], "z/(1-z)^2"),
    e("one-minus", &[], "1-z, boundary point 1 goes to 0"),
    e("cayley", &[], "z/(1-z), image is Re w > -1/2"),
    e("half-self", &[], "z/(2-z)"),
    e("log", &[], "log(1/(1-z))"),
    e("disk-automorphism", &[("a", "complex")], "(z-a)/(1-conj(a)z)"),
    e(
        "hyperbolic",
        &[("c", "number")],
        "hyperbolic self-map of the disk fixing 1",
    ),
    e(
        "ball-automorphism",
        &[("a", "complex vector")],
        "automorphism of the unit ball moving a to 0",
    ),
    e("linear", &[("matrix", "complex matrix")], "z -> Mz"),
    e(
        "diagonal",
        &[("maps", "list of maps")],
        "componentwise one-variable maps",
    ),
    e("compose", &[("outer", "map"), ("inner", "map")], "outer after inner"),
];

pub const GAMMAS: &[Entry] = &[
    e("jacobian-power", &[("alpha", "number")], "J_h(x)^alpha"),
    e("ratio-power", &[("beta", "number")], "(h(x)/x)^beta, one variable"),
    e(
        "boundary-ratio-self",
        &[("tau", "complex vector"), ("r", "number")],
        "((1-<h(x),tau>)/(1-<x,tau>))^(2/r), self-maps fixing tau",
    ),
    e(
        "boundary-ratio-biholo",
        &[("tau", "complex vector"), ("r", "number")],
        "(<h(x),tau>/(1-<x,tau>))^(2/r), maps sending tau to 0",
    ),
    e("product", &[("parts", "list of gammas")], "pointwise product"),
];

pub const CLASSIC: &[Entry] = &[
    e("roper-suffridge", &[("m", "integer")], "(f(z1), sqrt(f'(z1)) z0)"),
    e(
        "gkk",
        &[("alpha", "number in [0, 1/2]"), ("m", "integer")],
        "(f(z1), f'(z1)^alpha z0)",
    ),
    e(
        "gk",
        &[("beta", "number in [0, 1]"), ("m", "integer")],
        "(f(z1), (f(z1)/z1)^beta z0)",
    ),
    e("pfaltzgraff-suffridge", &[], "(f(z), J_f(z)^(1/(n+1)) w)"),
];

pub const MOTIONS: &[Entry] = &[
    e("linear", &[("a", "complex matrix")], "w -> e^{-tA} w"),
    e("shift", &[("tau", "complex vector")], "w -> w + t tau"),
    e(
        "affine",
        &[
            ("a", "complex matrix"),
            ("lambda", "number"),
            ("tau", "unit complex vector"),
        ],
        "w -> e^{-tA} w + lambda int_0^t e^{-sA} tau ds",
    ),
];

pub const CHECKS: &[Entry] = &[
    e("starlike", &[], "e^{-t} Phi(D) inside Phi(D)"),
    e(
        "spirallike",
        &[("motion", "linear, dimension n (base) or n+m (extension)")],
        "e^{-tA} f(D) inside f(D)",
    ),
    e(
        "extended-spirallike",
        &[("motion", "linear"), ("fiber", "B")],
        "diag(A, B+C)-spirallikeness of the extension",
    ),
    e(
        "convex-direction",
        &[("motion", "shift"), ("fiber", "optional B")],
        "extension convex in direction tau",
    ),
    e(
        "convex-direction-base",
        &[("motion", "shift")],
        "base map convex in direction tau",
    ),
    e(
        "affine-invariance",
        &[("motion", "affine"), ("fiber", "B")],
        "extension invariant under the affine family",
    ),
    e(
        "derive-c",
        &[("motion", "any")],
        "constant C with Gamma(M_t h) = e^{-Ct} Gamma(h)",
    ),
    e(
        "manifold",
        &[("motion", "linear or shift"), ("manifold", "seed point and grids")],
        "invariant family as CSV",
    ),
    e(
        "bloch",
        &[("bloch", "optional grid")],
        "Bloch-type suprema of the extension",
    ),
    e(
        "appropriate",
        &[],
        "sampled axioms of the gamma on self-maps of the ball",
    ),
    e(
        "semigroup-law",
        &[("motion", "linear or affine"), ("fiber", "optional B")],
        "F_{t+s} = F_t o F_s",
    ),
];

#[derive(Debug, Serialize)]
pub struct Catalog {
    pub maps: &'static [Entry],
    pub gammas: &'static [Entry],
    pub classic: &'static [Entry],
    pub motions: &'static [Entry],
    pub checks: &'static [Entry],
}

pub fn list_catalog() -> Catalog {
    Catalog {
        maps: MAPS,
        gammas: GAMMAS,
        classic: CLASSIC,
        motions: MOTIONS,
        checks: CHECKS,
    }
}
