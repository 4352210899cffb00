use alloc::string::String;
use alloc::vec::Vec;

use super::block::SurgeryError;
use crate::group::{GroupPresentation, Word};

fn check_words(p: &GroupPresentation, words: &[&Word]) -> Result<(), SurgeryError> {
    for w in words {
        if w.max_generator().is_some_and(|g| g >= p.generator_count()) {
            return Err(SurgeryError::InvalidParameter(alloc::format!(
                "word uses a generator outside {}",
                p
            )));
        }
    }
    Ok(())
}

/// An embedded closed surface together with its complement group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedSurfaceData {
    pub genus: usize,
    pub self_int: i64,
    pub complement: GroupPresentation,
    /// Images of `a₁, b₁, …, a_g, b_g`.
    pub images: Vec<Word>,
    pub meridian: Word,
}

impl EmbeddedSurfaceData {
    pub fn new(
        genus: usize,
        self_int: i64,
        complement: GroupPresentation,
        images: Vec<Word>,
        meridian: Word,
    ) -> Result<Self, SurgeryError> {
        if images.len() != 2 * genus {
            return Err(SurgeryError::WrongImageCount {
                expected: 2 * genus,
                found: images.len(),
            });
        }
        let mut all: Vec<&Word> = images.iter().collect();
        all.push(&meridian);
        check_words(&complement, &all)?;
        Ok(EmbeddedSurfaceData {
            genus,
            self_int,
            complement,
            images,
            meridian,
        })
    }

    /// A torus of square zero whose complement is simply connected.
    pub fn simply_connected_torus() -> Self {
        EmbeddedSurfaceData {
            genus: 1,
            self_int: 0,
            complement: GroupPresentation::trivial(),
            images: alloc::vec![Word::identity(), Word::identity()],
            meridian: Word::identity(),
        }
    }
}

/// A Lagrangian torus `Λ` with a framing push-off `λ′` and meridian `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianTorusData {
    pub complement: GroupPresentation,
    pub lambda: Word,
    pub meridian: Word,
}

impl LagrangianTorusData {
    pub fn new(
        complement: GroupPresentation,
        lambda: Word,
        meridian: Word,
    ) -> Result<Self, SurgeryError> {
        check_words(&complement, &[&lambda, &meridian])?;
        Ok(LagrangianTorusData {
            complement,
            lambda,
            meridian,
        })
    }
}

/// The plumbing chain `C_p`: squares `−(p+2), −2, …, −2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereChain {
    squares: Vec<i64>,
}

impl SphereChain {
    pub fn new(p: u32) -> Result<Self, SurgeryError> {
        if p < 2 {
            return Err(SurgeryError::InvalidParameter(alloc::format!(
                "C_p needs p >= 2, got {p}"
            )));
        }
        let mut squares = alloc::vec![-2i64; p as usize - 1];
        squares[0] = -(i64::from(p) + 2);
        Ok(SphereChain { squares })
    }

    /// Recognizes a list of squares as some `C_p`.
    pub fn from_squares(squares: &[i64]) -> Option<Self> {
        let p = u32::try_from(squares.len() + 1).ok()?;
        let c = SphereChain::new(p).ok()?;
        (c.squares == squares).then_some(c)
    }

    pub fn p(&self) -> u32 {
        self.squares.len() as u32 + 1
    }

    pub fn squares(&self) -> &[i64] {
        &self.squares
    }
}

/// Evidence that the meridian of a `C_p` configuration is nullhomotopic in
/// its complement, so that blowing it down leaves `π₁` unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeridianCertificate {
    TrivialInComplement(String),
}

impl MeridianCertificate {
    pub fn note(&self) -> &str {
        match self {
            MeridianCertificate::TrivialInComplement(s) => s,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains() {
        assert_eq!(SphereChain::new(2).unwrap().squares(), &[-4]);
        assert_eq!(SphereChain::new(4).unwrap().squares(), &[-6, -2, -2]);
        assert!(SphereChain::new(1).is_err());
        assert_eq!(SphereChain::from_squares(&[-5, -2]).unwrap().p(), 3);
        assert!(SphereChain::from_squares(&[-5, -3]).is_none());
        assert!(SphereChain::from_squares(&[]).is_none());
    }

    #[test]
    fn surface_image_count() {
        let p = GroupPresentation::free(["x"]).unwrap();
        let e = EmbeddedSurfaceData::new(2, 0, p.clone(), alloc::vec![Word::identity(); 3], Word::identity());
        assert_eq!(e, Err(SurgeryError::WrongImageCount { expected: 4, found: 3 }));
        let bad = EmbeddedSurfaceData::new(0, 0, p, alloc::vec![], Word::generator(1));
        assert!(bad.is_err());
    }
}
