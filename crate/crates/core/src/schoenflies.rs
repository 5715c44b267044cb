//! Schoenflies labels for the seventeen finite symmetry families in 3D-space.
//!
//! Families: `C1`, `Ci`, `Cs`, `Ck`, `Ckh`, `Ckv`, `Dl`, `Dlh`, `Dlv`, `Sm`,
//! `T`, `Td`, `Th`, `O`, `Oh`, `I`, `Ih`. Note that `Dlv` here is the
//! antiprism group conventionally written D_ld; this crate follows the naming
//! used throughout the rest of the artifact.

use core::fmt;
use core::str::FromStr;

use crate::error::Error;

/// A Schoenflies family with its parameter, e.g. `C4h`, `D3v`, `S10`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Schoenflies {
    C1,
    Ci,
    Cs,
    /// Cyclic group of a single k-fold axis (k >= 2).
    C(u32),
    /// Cyclic group plus the horizontal mirror (k >= 2).
    Ch(u32),
    /// Cyclic group plus k vertical mirrors (k >= 2).
    Cv(u32),
    /// Dihedral group (l >= 2).
    D(u32),
    /// Dihedral group plus the horizontal mirror (l >= 2).
    Dh(u32),
    /// Dihedral group plus l vertical mirrors avoiding the secondary axes
    /// (l >= 2); the antiprism group.
    Dv(u32),
    /// Rotoreflection group of even order m >= 4.
    S(u32),
    T,
    Td,
    Th,
    O,
    Oh,
    I,
    Ih,
}

impl Schoenflies {
    /// Group order per family.
    pub fn order(&self) -> u32 {
        match *self {
            Schoenflies::C1 => 1,
            Schoenflies::Ci | Schoenflies::Cs => 2,
            Schoenflies::C(k) => k,
            Schoenflies::Ch(k) | Schoenflies::Cv(k) => 2 * k,
            Schoenflies::D(l) => 2 * l,
            Schoenflies::Dh(l) | Schoenflies::Dv(l) => 4 * l,
            Schoenflies::S(m) => m,
            Schoenflies::T => 12,
            Schoenflies::Td | Schoenflies::Th | Schoenflies::O => 24,
            Schoenflies::Oh => 48,
            Schoenflies::I => 60,
            Schoenflies::Ih => 120,
        }
    }

    /// True for the rotation families C1, Ck, Dl, T, O, I.
    pub fn is_rotation_group(&self) -> bool {
        matches!(
            self,
            Schoenflies::C1
                | Schoenflies::C(_)
                | Schoenflies::D(_)
                | Schoenflies::T
                | Schoenflies::O
                | Schoenflies::I
        )
    }

    /// True for T, O, I: the rotation groups that do not act on a plane.
    pub fn is_3d_rotation_group(&self) -> bool {
        matches!(self, Schoenflies::T | Schoenflies::O | Schoenflies::I)
    }

    /// Labels forbidden in the symmetricity of a solvable initial
    /// configuration: all polyhedral families, `Ckh` for k >= 3, and `Dlh`.
    pub fn is_plane_formation_obstruction(&self) -> bool {
        match *self {
            Schoenflies::T
            | Schoenflies::Td
            | Schoenflies::Th
            | Schoenflies::O
            | Schoenflies::Oh
            | Schoenflies::I
            | Schoenflies::Ih => true,
            Schoenflies::Ch(k) => k >= 3,
            Schoenflies::Dh(_) => true,
            _ => false,
        }
    }

    /// Parameter validity per family.
    pub fn is_valid(&self) -> bool {
        match *self {
            Schoenflies::C(k) | Schoenflies::Ch(k) | Schoenflies::Cv(k) => k >= 2,
            Schoenflies::D(l) | Schoenflies::Dh(l) | Schoenflies::Dv(l) => l >= 2,
            Schoenflies::S(m) => m >= 4 && m % 2 == 0,
            _ => true,
        }
    }

    /// Deterministic sort key: by order, then family, then parameter.
    fn sort_key(&self) -> (u32, u8, u32) {
        let (fam, p) = match *self {
            Schoenflies::C1 => (0, 0),
            Schoenflies::Ci => (1, 0),
            Schoenflies::Cs => (2, 0),
            Schoenflies::C(k) => (3, k),
            Schoenflies::S(m) => (4, m),
            Schoenflies::Ch(k) => (5, k),
            Schoenflies::Cv(k) => (6, k),
            Schoenflies::D(l) => (7, l),
            Schoenflies::Dh(l) => (8, l),
            Schoenflies::Dv(l) => (9, l),
            Schoenflies::T => (10, 0),
            Schoenflies::Td => (11, 0),
            Schoenflies::Th => (12, 0),
            Schoenflies::O => (13, 0),
            Schoenflies::Oh => (14, 0),
            Schoenflies::I => (15, 0),
            Schoenflies::Ih => (16, 0),
        };
        (self.order(), fam, p)
    }
}

impl PartialOrd for Schoenflies {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Schoenflies {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Schoenflies {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Schoenflies::C1 => write!(f, "C1"),
            Schoenflies::Ci => write!(f, "Ci"),
            Schoenflies::Cs => write!(f, "Cs"),
            Schoenflies::C(k) => write!(f, "C{k}"),
            Schoenflies::Ch(k) => write!(f, "C{k}h"),
            Schoenflies::Cv(k) => write!(f, "C{k}v"),
            Schoenflies::D(l) => write!(f, "D{l}"),
            Schoenflies::Dh(l) => write!(f, "D{l}h"),
            Schoenflies::Dv(l) => write!(f, "D{l}v"),
            Schoenflies::S(m) => write!(f, "S{m}"),
            Schoenflies::T => write!(f, "T"),
            Schoenflies::Td => write!(f, "Td"),
            Schoenflies::Th => write!(f, "Th"),
            Schoenflies::O => write!(f, "O"),
            Schoenflies::Oh => write!(f, "Oh"),
            Schoenflies::I => write!(f, "I"),
            Schoenflies::Ih => write!(f, "Ih"),
        }
    }
}

impl FromStr for Schoenflies {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let label = match s {
            "C1" => Schoenflies::C1,
            "Ci" => Schoenflies::Ci,
            "Cs" => Schoenflies::Cs,
            "T" => Schoenflies::T,
            "Td" => Schoenflies::Td,
            "Th" => Schoenflies::Th,
            "O" => Schoenflies::O,
            "Oh" => Schoenflies::Oh,
            "I" => Schoenflies::I,
            "Ih" => Schoenflies::Ih,
            _ => {
                let (family, rest) = s.split_at(1);
                let (digits, suffix) = match rest.find(|c: char| !c.is_ascii_digit()) {
                    Some(pos) => rest.split_at(pos),
                    None => (rest, ""),
                };
                let p: u32 = digits.parse().map_err(|_| Error::UnknownLabel)?;
                match (family, suffix) {
                    ("C", "") => Schoenflies::C(p),
                    ("C", "h") => Schoenflies::Ch(p),
                    ("C", "v") => Schoenflies::Cv(p),
                    ("D", "") => Schoenflies::D(p),
                    ("D", "h") => Schoenflies::Dh(p),
                    ("D", "v") | ("D", "d") => Schoenflies::Dv(p),
                    ("S", "") => Schoenflies::S(p),
                    _ => return Err(Error::UnknownLabel),
                }
            }
        };
        if !label.is_valid() {
            return Err(Error::UnknownLabel);
        }
        Ok(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn orders_match_the_seventeen_families() {
        assert_eq!(Schoenflies::C1.order(), 1);
        assert_eq!(Schoenflies::Ci.order(), 2);
        assert_eq!(Schoenflies::Cs.order(), 2);
        assert_eq!(Schoenflies::C(5).order(), 5);
        assert_eq!(Schoenflies::Ch(5).order(), 10);
        assert_eq!(Schoenflies::Cv(5).order(), 10);
        assert_eq!(Schoenflies::D(4).order(), 8);
        assert_eq!(Schoenflies::Dh(4).order(), 16);
        assert_eq!(Schoenflies::Dv(4).order(), 16);
        assert_eq!(Schoenflies::S(10).order(), 10);
        assert_eq!(Schoenflies::T.order(), 12);
        assert_eq!(Schoenflies::Td.order(), 24);
        assert_eq!(Schoenflies::Th.order(), 24);
        assert_eq!(Schoenflies::O.order(), 24);
        assert_eq!(Schoenflies::Oh.order(), 48);
        assert_eq!(Schoenflies::I.order(), 60);
        assert_eq!(Schoenflies::Ih.order(), 120);
    }

    #[test]
    fn display_parse_round_trip() {
        for label in [
            Schoenflies::C1,
            Schoenflies::Ci,
            Schoenflies::Cs,
            Schoenflies::C(7),
            Schoenflies::Ch(2),
            Schoenflies::Cv(12),
            Schoenflies::D(2),
            Schoenflies::Dh(6),
            Schoenflies::Dv(5),
            Schoenflies::S(4),
            Schoenflies::T,
            Schoenflies::Td,
            Schoenflies::Th,
            Schoenflies::O,
            Schoenflies::Oh,
            Schoenflies::I,
            Schoenflies::Ih,
        ] {
            let s = label.to_string();
            assert_eq!(s.parse::<Schoenflies>().unwrap(), label, "{s}");
        }
        assert!("S3".parse::<Schoenflies>().is_err(), "odd rotoreflection order");
        assert!("C1h".parse::<Schoenflies>().is_err());
        assert!("Q5".parse::<Schoenflies>().is_err());
        // D5d is accepted as an alias for the antiprism family naming.
        assert_eq!("D5d".parse::<Schoenflies>().unwrap(), Schoenflies::Dv(5));
    }

    #[test]
    fn forbidden_labels_for_plane_formation() {
        assert!(Schoenflies::T.is_plane_formation_obstruction());
        assert!(Schoenflies::Oh.is_plane_formation_obstruction());
        assert!(Schoenflies::Ch(3).is_plane_formation_obstruction());
        assert!(Schoenflies::Dh(2).is_plane_formation_obstruction());
        assert!(!Schoenflies::Ch(2).is_plane_formation_obstruction());
        assert!(!Schoenflies::Dv(3).is_plane_formation_obstruction());
        assert!(!Schoenflies::S(10).is_plane_formation_obstruction());
        assert!(!Schoenflies::Cv(6).is_plane_formation_obstruction());
    }
}
