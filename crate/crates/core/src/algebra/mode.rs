/// Physical origin of a beam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    S1,
    S2,
}

impl Source {
    /// Carrier frequency of this source's light. Each source runs at its own
    /// fixed carrier, so the frequency tag is derived rather than stored.
    pub fn frequency(self) -> Frequency {
        match self {
            Source::S1 => Frequency::Omega1,
            Source::S2 => Frequency::Omega2,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Source::S1 => 0,
            Source::S2 => 1,
        }
    }
}

/// Carrier-frequency tag. `Omega1` is the red beam, `Omega2` the blue one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Frequency {
    Omega1,
    Omega2,
}

/// Output path label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathLabel {
    A,
    B,
}

/// Provenance stamp for one occupied mode: which source's light sits in which
/// output path. The carrier frequency follows from the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeTag {
    pub source: Source,
    pub path: PathLabel,
}

impl ModeTag {
    pub fn new(source: Source, path: PathLabel) -> Self {
        Self { source, path }
    }

    pub fn frequency(&self) -> Frequency {
        self.source.frequency()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_locked_to_source() {
        assert_eq!(ModeTag::new(Source::S1, PathLabel::A).frequency(), Frequency::Omega1);
        assert_eq!(ModeTag::new(Source::S1, PathLabel::B).frequency(), Frequency::Omega1);
        assert_eq!(ModeTag::new(Source::S2, PathLabel::A).frequency(), Frequency::Omega2);
        assert_eq!(ModeTag::new(Source::S2, PathLabel::B).frequency(), Frequency::Omega2);
    }
}
