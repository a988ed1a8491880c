use core::fmt;

/// Three-valued answer of a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    pub fn is_no(self) -> bool {
        self == Decision::No
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A catalog fact together with the reason it holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fact {
    pub value: Decision,
    pub citation: &'static str,
}

impl Fact {
    pub const fn new(value: Decision, citation: &'static str) -> Self {
        Fact { value, citation }
    }

    pub const fn unknown() -> Self {
        Fact::new(Decision::Unknown, "no catalog entry")
    }
}
