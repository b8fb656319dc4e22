//! Instance checks of the defining relations: the Kumjian-Pask relations
//! (CK1)-(CK4) for the `s_μ` and the relations (EP2)-(EP5) tying them to the
//! `u_{v,g}`.
//!
//! Both sides of each instance are computed with the closed-form product and
//! compared through normal forms. On a valid system this is an identity; on
//! broken tables (see [`SelfSimilarSystem::assemble`]) the instances that
//! route through different group words or square orientations disagree.

use alloc::format;
use alloc::vec::Vec;

use crate::action::SelfSimilarSystem;
use crate::algebra::{Element, EpAlgebra};
use crate::degree::Degree;
use crate::group::GroupElement;
use crate::kgraph::Path;
use crate::report::{Check, ValidationReport};

/// Group elements used for `Z^m` systems: the box of this radius.
pub const DEFAULT_GROUP_RADIUS: i64 = 2;

/// Checks every relation instance with paths of degree `<= depth`.
pub fn check_relations(sys: &SelfSimilarSystem, depth: &Degree) -> ValidationReport {
    check_relations_with(sys, depth, DEFAULT_GROUP_RADIUS)
}

pub fn check_relations_with(sys: &SelfSimilarSystem, depth: &Degree, radius: i64) -> ValidationReport {
    let mut report = ValidationReport::new();
    let graph = sys.graph();
    if depth.rank() != graph.k() {
        report.push(Check::Schema, format!("depth {depth} has rank {} but k = {}", depth.rank(), graph.k()));
        return report;
    }
    let alg = EpAlgebra::new(sys);
    let group = sys.group();
    let elements = group.elements_within(radius);
    let paths: Vec<Path> = graph
        .vertices()
        .flat_map(|v| graph.paths_up_to(v, depth).expect("valid vertex and rank"))
        .collect();
    let name = |p: &Path| graph.path_name(p);
    let gname = |g: &GroupElement| group.format(g);

    let expect = |report: &mut ValidationReport, check: Check, lhs: Element<i64>, rhs: Element<i64>, what: &dyn Fn() -> alloc::string::String| {
        report.count();
        let diff = lhs.sub(&rhs).expect("same system");
        if !alg.normalize(&diff).is_empty() {
            report.push(check, what());
        }
    };

    // (CK1)
    for v in graph.vertices() {
        let sv: Element<i64> = alg.gen_s(&graph.vertex_path(v));
        expect(&mut report, Check::Ck1, alg.adjoint(&sv), sv.clone(), &|| format!("s_{}^* != s_{}", graph.vertex_name(v), graph.vertex_name(v)));
        for w in graph.vertices() {
            let sw: Element<i64> = alg.gen_s(&graph.vertex_path(w));
            let rhs = if v == w { sv.clone() } else { alg.zero() };
            expect(&mut report, Check::Ck1, alg.mul(&sv, &sw).unwrap(), rhs, &|| {
                format!("s_{} s_{} is wrong", graph.vertex_name(v), graph.vertex_name(w))
            });
        }
    }
    // (CK2), (CK3)
    for m in &paths {
        let sm: Element<i64> = alg.gen_s(m);
        let src: Element<i64> = alg.gen_s(&graph.vertex_path(m.source()));
        expect(&mut report, Check::Ck3, alg.mul(&alg.gen_s_star(m), &sm).unwrap(), src, &|| format!("s_{0}^* s_{0} != s_(s({0}))", name(m)));
        for n in &paths {
            if n.range() != m.source() {
                continue;
            }
            let mn = graph.compose(m, n).unwrap();
            if !mn.degree().le(depth) {
                continue;
            }
            expect(&mut report, Check::Ck2, alg.mul(&sm, &alg.gen_s(n)).unwrap(), alg.gen_s(&mn), &|| {
                format!("s_{} s_{} != s_{}", name(m), name(n), name(&mn))
            });
        }
    }
    // (CK4)
    for v in graph.vertices() {
        for n in depth.below() {
            let mut sum: Element<i64> = alg.zero();
            for l in graph.paths_from(v, &n).unwrap() {
                sum = sum.add(&alg.mul(&alg.gen_s(&l), &alg.gen_s_star(&l)).unwrap()).unwrap();
            }
            expect(&mut report, Check::Ck4, alg.gen_s(&graph.vertex_path(v)), sum, &|| {
                format!("s_{} != sum over degree {n}", graph.vertex_name(v))
            });
        }
    }

    for v in graph.vertices() {
        let vn = graph.vertex_name(v);
        // (EP2)
        expect(&mut report, Check::UnitVertex, alg.gen_u(v, &group.identity()).unwrap(), alg.gen_s(&graph.vertex_path(v)), &|| format!("u_({vn},e) != s_{vn}"));
        for g in &elements {
            let gi = group.inv_unchecked(g);
            let u: Element<i64> = alg.gen_u(v, g).unwrap();
            // (EP3)
            let w = sys.vertex_image(&gi, v);
            expect(&mut report, Check::UAdjoint, alg.adjoint(&u), alg.gen_u(w, &gi).unwrap(), &|| {
                format!("u_({vn},{})^* is wrong", gname(g))
            });
            // (EP5)
            for x in graph.vertices() {
                for h in &elements {
                    let lhs = alg.mul(&u, &alg.gen_u(x, h).unwrap()).unwrap();
                    let rhs = if sys.vertex_image(g, x) == v {
                        alg.gen_u(v, &group.mul_unchecked(g, h)).unwrap()
                    } else {
                        alg.zero()
                    };
                    expect(&mut report, Check::UProduct, lhs, rhs, &|| {
                        format!("u_({vn},{}) u_({},{}) is wrong", gname(g), graph.vertex_name(x), gname(h))
                    });
                }
            }
            // (EP4)
            for m in &paths {
                let rhs = if sys.vertex_image(g, m.range()) == v {
                    let (gm, phi) = sys.act(g, m);
                    let s = sys.vertex_image(g, m.source());
                    alg.mul(&alg.gen_s(&gm), &alg.gen_u(s, &phi).unwrap()).unwrap()
                } else {
                    alg.zero()
                };
                let lhs = alg.mul(&u, &alg.gen_s(m)).unwrap();
                expect(&mut report, Check::USCommutation, lhs, rhs.clone(), &|| {
                    format!("u_({vn},{}) s_{} is wrong", gname(g), name(m))
                });
                // Edge by edge, in descending colour order when possible.
                if m.len() > 1 {
                    if let Some(rev) = descending_factors(sys, m) {
                        let mut acc = u.clone();
                        for f in &rev {
                            acc = alg.mul(&acc, &alg.gen_s(f)).unwrap();
                        }
                        expect(&mut report, Check::USCommutation, acc, rhs.clone(), &|| {
                            format!("u_({vn},{}) applied edge by edge to {} disagrees", gname(g), name(m))
                        });
                    }
                }
                // Through a factorisation g = g1 g2.
                for g1 in &elements {
                    let g2 = group.mul_unchecked(&group.inv_unchecked(g1), g);
                    let v2 = sys.vertex_image(&group.inv_unchecked(g1), v);
                    let inner = alg.mul(&alg.gen_u(v2, &g2).unwrap(), &alg.gen_s(m)).unwrap();
                    let lhs = alg.mul(&alg.gen_u(v, g1).unwrap(), &inner).unwrap();
                    expect(&mut report, Check::USCommutation, lhs, rhs.clone(), &|| {
                        format!("u_({vn},{}) (u_({},{}) s_{}) disagrees with u_({vn},{}) s_{}", gname(g1), graph.vertex_name(v2), gname(&g2), name(m), gname(g), name(m))
                    });
                }
            }
        }
    }
    report
}

/// The edges of `m` as single-edge paths, ordered so that colours descend
/// where possible. The product of the factors is `m`.
fn descending_factors(sys: &SelfSimilarSystem, m: &Path) -> Option<Vec<Path>> {
    let graph = sys.graph();
    let k = graph.k();
    let mut order: Vec<usize> = Vec::new();
    for c in (0..k).rev() {
        for _ in 0..m.degree().get(c) {
            order.push(c);
        }
    }
    let mut rest = m.clone();
    let mut out = Vec::new();
    for c in order {
        let unit = Degree::unit(k, c);
        let (head, tail) = graph.factorize(&rest, &unit).ok()?;
        out.push(head);
        rest = tail;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn valid_systems_pass() {
        assert!(check_relations(&catalog::rose(2), &Degree::new(alloc::vec![2])).is_empty());
        assert!(check_relations(&catalog::adding_machine(), &Degree::new(alloc::vec![2])).is_empty());
        assert!(check_relations(&catalog::odometer_2graph(), &Degree::new(alloc::vec![1, 1])).is_empty());
    }

    #[test]
    fn corrupted_cocycle_breaks_ep4() {
        let (sys, report) = SelfSimilarSystem::assemble(&catalog::corrupted_adding_machine_raw());
        assert!(!report.is_empty());
        let report = check_relations(&sys.unwrap(), &Degree::new(alloc::vec![1]));
        assert!(report.has(Check::USCommutation), "{report}");
    }
}
