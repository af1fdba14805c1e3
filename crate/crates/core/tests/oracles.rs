use infolattice::backend::dense::{DenseState, C64};
use infolattice::backend::gaussian::fock::FockState;
use infolattice::backend::gaussian::{ground_state_bdg, ground_state_number_conserving};
use infolattice::backend::stabilizer::StabilizerTableau;
use infolattice::backend::EntropyBackend;
use infolattice::family::GenericFamily;
use infolattice::geometry::Geometry;
use infolattice::lattice::{build_generic_lattice, build_lattice, BuildOptions};
use infolattice::pauli::PauliString;
use infolattice::plan::{enumerate_rectangles, SubsystemPlan};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |m| (0..n).filter(|&q| m >> q & 1 == 1).collect())
}

fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let mut h = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = C64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

fn random_bdg(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let h = random_hermitian(n, rng);
    let mut d = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            d[(i, j)] = z;
            d[(j, i)] = -z;
        }
    }
    let mut m = DMatrix::<C64>::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&h);
    m.view_mut((0, n), (n, n)).copy_from(&d);
    m.view_mut((n, 0), (n, n)).copy_from(&d.adjoint());
    m.view_mut((n, n), (n, n)).copy_from(&(-h.conjugate()));
    m
}

#[test]
fn gaussian_matches_fock_number_conserving() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 8;
    let h = random_hermitian(n, &mut rng);
    let g = ground_state_number_conserving(&h, 3).unwrap();
    let f = FockState::number_conserving(&h, 3).unwrap();
    for s in subsets(n) {
        let d = (g.information(&s).unwrap() - f.information(&s).unwrap()).abs();
        assert!(d < 1e-9, "{s:?}: {d}");
    }
}

#[test]
fn gaussian_matches_fock_bdg() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = 7;
    let h = random_bdg(n, &mut rng);
    let g = ground_state_bdg(&h).unwrap();
    let f = FockState::bdg(&h).unwrap();
    for s in subsets(n) {
        let d = (g.information(&s).unwrap() - f.information(&s).unwrap()).abs();
        assert!(d < 1e-9, "{s:?}: {d}");
    }
}

/// Graph state with random local Cliffords, as generators and as a vector.
/// Qubit `q` is bit `q` of the basis index.
struct RandomStabilizer {
    n: usize,
    ops: Vec<Vec<char>>,
    signs: Vec<bool>,
    amps: Vec<C64>,
}

impl RandomStabilizer {
    fn new(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let upper: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| j > i && rng.random_bool(0.4)).collect())
            .collect();
        let adj: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| upper[i][j] || upper[j][i]).collect())
            .collect();
        let ops: Vec<Vec<char>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            'X'
                        } else if adj[i][j] {
                            'Z'
                        } else {
                            'I'
                        }
                    })
                    .collect()
            })
            .collect();
        let norm = (1u64 << n) as f64;
        let amps = (0..1usize << n)
            .map(|b| {
                let occupied = |q: usize| b >> q & 1 == 1;
                let edges = upper
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &e)| (i, j, e)))
                    .filter(|&(i, j, e)| e && occupied(i) && occupied(j))
                    .count();
                C64::new(if edges % 2 == 1 { -1.0 } else { 1.0 } / norm.sqrt(), 0.0)
            })
            .collect();
        let mut s = RandomStabilizer {
            n,
            ops,
            signs: vec![false; n],
            amps,
        };
        for q in 0..n {
            match rng.random_range(0..3) {
                0 => s.hadamard(q),
                1 => s.phase(q),
                _ => {}
            }
            if rng.random_bool(0.5) {
                s.hadamard(q);
            }
        }
        s
    }

    fn hadamard(&mut self, q: usize) {
        for (op, sign) in self.ops.iter_mut().zip(&mut self.signs) {
            op[q] = match op[q] {
                'X' => 'Z',
                'Z' => 'X',
                'Y' => {
                    *sign = !*sign;
                    'Y'
                }
                c => c,
            };
        }
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for b in 0..self.amps.len() {
            if b >> q & 1 == 0 {
                let c = b | 1 << q;
                let (a0, a1) = (self.amps[b], self.amps[c]);
                self.amps[b] = (a0 + a1) * r;
                self.amps[c] = (a0 - a1) * r;
            }
        }
    }

    fn phase(&mut self, q: usize) {
        for (op, sign) in self.ops.iter_mut().zip(&mut self.signs) {
            op[q] = match op[q] {
                'X' => 'Y',
                'Y' => {
                    *sign = !*sign;
                    'X'
                }
                c => c,
            };
        }
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b >> q & 1 == 1 {
                *a *= C64::new(0.0, 1.0);
            }
        }
    }

    fn generators(&self) -> Vec<PauliString> {
        self.ops
            .iter()
            .zip(&self.signs)
            .map(|(op, &neg)| {
                let body: String = op.iter().collect();
                PauliString::parse(&format!("{}{body}", if neg { '-' } else { '+' })).unwrap()
            })
            .collect()
    }
}

#[test]
fn stabilizer_matches_dense_pure() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..3 {
        let s = RandomStabilizer::new(10, &mut rng);
        let dense = DenseState::from_vector(s.n, &s.amps).unwrap();
        let gens = s.generators();
        for g in &gens {
            assert!((dense.expectation(g).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let tab = StabilizerTableau::new(s.n, gens).unwrap();
        for sub in subsets(s.n) {
            let a = tab.information(&sub).unwrap();
            let b = dense.information(&sub).unwrap();
            assert!((a - b).abs() < 1e-9, "{sub:?}: {a} vs {b}");
            assert_eq!(a, a.round());
        }
    }
}

/// Explicit matrix of a signed Pauli string.
fn pauli_matrix(op: &[char], neg: bool) -> DMatrix<C64> {
    let n = op.len();
    let mut m = DMatrix::<C64>::zeros(1 << n, 1 << n);
    for b in 0..1usize << n {
        let mut phase = C64::new(if neg { -1.0 } else { 1.0 }, 0.0);
        let mut c = b;
        for (q, &o) in op.iter().enumerate() {
            let bit = b >> q & 1;
            let sign = if bit == 1 { -1.0 } else { 1.0 };
            match o {
                'X' => c ^= 1 << q,
                'Z' => phase *= sign,
                'Y' => {
                    c ^= 1 << q;
                    phase *= C64::new(0.0, sign);
                }
                _ => {}
            }
        }
        m[(c, b)] = phase;
    }
    m
}

#[test]
fn stabilizer_matches_dense_mixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let n = 7;
    let s = RandomStabilizer::new(n, &mut rng);
    let kept = n - 2;
    let dim = 1usize << n;
    let mut rho = DMatrix::<C64>::identity(dim, dim) / C64::new(dim as f64, 0.0);
    for j in 0..kept {
        let g = pauli_matrix(&s.ops[j], s.signs[j]);
        rho = &rho * (DMatrix::<C64>::identity(dim, dim) + g);
    }
    let dense = DenseState::from_density_matrix(n, rho).unwrap();
    let tab = StabilizerTableau::new(n, s.generators()[..kept].to_vec()).unwrap();
    assert!(!tab.is_pure());
    for sub in subsets(n) {
        let a = tab.information(&sub).unwrap();
        let b = dense.information(&sub).unwrap();
        assert!((a - b).abs() < 1e-9, "{sub:?}: {a} vs {b}");
    }
}

#[test]
fn moebius_engine_matches_rectangle_stencil() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let n = 9;
    let v: Vec<C64> = (0..1 << n)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let state = DenseState::from_unnormalized(n, &v).unwrap();
    let geo = Geometry::sites(3, 3);
    let (lat, _) =
        build_lattice(&state, &geo, &SubsystemPlan::Full, &BuildOptions::default()).unwrap();
    let rects = enumerate_rectangles(geo.extent(), &SubsystemPlan::Full).unwrap();
    let members: Vec<Vec<usize>> = rects.iter().map(|r| geo.rect_sites(r).unwrap()).collect();
    let family = GenericFamily::new(members.clone()).unwrap();
    let generic = build_generic_lattice(&state, &family).unwrap();
    for (r, m) in rects.iter().zip(&members) {
        let k = family.position(m).unwrap();
        let d = (lat.entries[r] - generic.local[k]).abs();
        assert!(d < 1e-10, "{r}: {d}");
    }
}
