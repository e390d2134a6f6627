/// Size limits for the exhaustive searches.
///
/// All searches in this crate are exponential in some parameter; each cap
/// bounds one of them and is reported through `Error::CapExceeded`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Carrier size for up-set, antichain and chain enumeration.
    pub poset_size: usize,
    /// Elements in a lattice assembled from a family of sets (tables are quadratic).
    pub lattice_size: usize,
    /// `|F_{M(L)}|` for sublattice searches (embedding, operator classes).
    pub family_size: usize,
    /// `|M(L)|` for the subset scan of condition (M).
    pub meet_irreducibles: usize,
    /// Number of closed sub-families a sublattice search may produce.
    pub sublattices: usize,
    /// Largest `n` accepted by the poset generator.
    pub generated_poset: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            poset_size: 20,
            lattice_size: 1024,
            family_size: 24,
            meet_irreducibles: 15,
            sublattices: 200_000,
            generated_poset: 6,
        }
    }
}

impl Caps {
    pub(crate) fn check_poset(&self, n: usize) -> crate::Result<()> {
        if n > self.poset_size || n > crate::ElemSet::CAPACITY {
            return Err(crate::Error::cap(
                "poset size",
                self.poset_size.min(crate::ElemSet::CAPACITY),
                n,
            ));
        }
        Ok(())
    }

    pub(crate) fn check_lattice(&self, n: usize) -> crate::Result<()> {
        if n > self.lattice_size {
            return Err(crate::Error::cap("lattice size", self.lattice_size, n));
        }
        Ok(())
    }

    pub(crate) fn check_family(&self, n: usize) -> crate::Result<()> {
        let limit = self.family_size.min(crate::ElemSet::CAPACITY);
        if n > limit {
            return Err(crate::Error::cap("up-set family size", limit, n));
        }
        Ok(())
    }
}
