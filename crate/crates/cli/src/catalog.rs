//! Built-in named scenarios.

pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub spec: &'static str,
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "pauli-z2z2",
        description: "Z2 x Z2 with the Pauli cocycle; simple with unique trace, oracle cross-check",
        spec: include_str!("../specs/pauli-z2z2.toml"),
    },
    Scenario {
        name: "nc-torus-irrational",
        description: "Z^2 with the formal irrational rotation cocycle",
        spec: include_str!("../specs/nc-torus-irrational.toml"),
    },
    Scenario {
        name: "bs22-irrational",
        description: "BS(2,2) with the cocycle pulled back from the rotation cocycle on Z^2",
        spec: include_str!("../specs/bs22-irrational.toml"),
    },
    Scenario {
        name: "lamplighter-trivial",
        description: "Lamplighter group with trivial cocycle; Kleppner holds but the algebra is not simple",
        spec: include_str!("../specs/lamplighter-trivial.toml"),
    },
    Scenario {
        name: "dinf-trivial",
        description: "Infinite dihedral group with trivial cocycle",
        spec: include_str!("../specs/dinf-trivial.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}
