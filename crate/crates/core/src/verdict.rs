/// Outcome of a verifier that can name what went wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn into_result(self) -> Result<(), W> {
        match self {
            Verdict::Pass => Ok(()),
            Verdict::Fail(w) => Err(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(w) => Verdict::Fail(f(w)),
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    fn from(o: Option<W>) -> Self {
        match o {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail(w),
        }
    }
}
