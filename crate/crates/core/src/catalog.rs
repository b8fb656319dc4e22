//! Small example systems used in tests, documentation and the CLI.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{RawLetter, RawSystem, SelfSimilarSystem};
use crate::group::RawGroup;
use crate::kgraph::{KGraph, RawEdge, RawKGraph, RawSquare};

fn edge(id: &str, color: usize, source: &str, range: &str) -> RawEdge {
    RawEdge { id: id.into(), color, source: source.into(), range: range.into() }
}

fn square(e: &str, f: &str, f2: &str, e2: &str) -> RawSquare {
    RawSquare { e: e.into(), f: f.into(), f2: f2.into(), e2: e2.into() }
}

fn pairs(xs: &[(&str, &str)]) -> Vec<(String, String)> {
    xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn letter(element: &str, vertex: &[(&str, &str)], edges: &[(&str, &str)], cocycle: &[(&str, &str)]) -> RawLetter {
    RawLetter {
        element: element.into(),
        vertex_action: pairs(vertex),
        edge_action: pairs(edges),
        cocycle: pairs(cocycle),
    }
}

fn trivial_group() -> RawGroup {
    RawGroup::Finite { elements: vec!["e".into()], table: vec![vec!["e".into()]] }
}

fn z2() -> RawGroup {
    RawGroup::Finite {
        elements: vec!["0".into(), "1".into()],
        table: vec![vec!["0".into(), "1".into()], vec!["1".into(), "0".into()]],
    }
}

fn z(rank: usize) -> RawGroup {
    RawGroup::FreeAbelian { rank, names: Vec::new() }
}

fn build(raw: RawSystem) -> SelfSimilarSystem {
    SelfSimilarSystem::new(&raw).expect("catalog systems are valid")
}

/// Single vertex `v` with `n` loops `a, b, c, ...` of colour 1.
pub fn rose_raw_graph(n: usize) -> RawKGraph {
    assert!((1..=26).contains(&n));
    RawKGraph {
        k: 1,
        vertices: vec!["v".into()],
        edges: (0..n)
            .map(|i| {
                let name = ((b'a' + i as u8) as char).to_string();
                edge(&name, 1, "v", "v")
            })
            .collect(),
        squares: Vec::new(),
    }
}

pub fn rose_graph(n: usize) -> KGraph {
    KGraph::new(&rose_raw_graph(n)).unwrap()
}

/// The rose with `n` petals and the trivial group.
pub fn rose(n: usize) -> SelfSimilarSystem {
    build(RawSystem { graph: rose_raw_graph(n), group: trivial_group(), letters: Vec::new() })
}

/// One vertex, one loop `a`, trivial group.
pub fn single_loop() -> SelfSimilarSystem {
    rose(1)
}

/// Single vertex 2-graph with loops `a` (colour 1), `f` (colour 2) and `af = fa`.
pub fn square_raw_graph() -> RawKGraph {
    RawKGraph {
        k: 2,
        vertices: vec!["v".into()],
        edges: vec![edge("a", 1, "v", "v"), edge("f", 2, "v", "v")],
        squares: vec![square("a", "f", "f", "a")],
    }
}

pub fn square_graph() -> KGraph {
    KGraph::new(&square_raw_graph()).unwrap()
}

pub fn square_system() -> SelfSimilarSystem {
    build(RawSystem { graph: square_raw_graph(), group: trivial_group(), letters: Vec::new() })
}

/// Vertices `v, w`; a loop `f` at `v`, an edge `e` with range `v` and source
/// `w`, and loops `c, d` at `w`.
pub fn two_vertex_raw_graph() -> RawKGraph {
    RawKGraph {
        k: 1,
        vertices: vec!["v".into(), "w".into()],
        edges: vec![
            edge("f", 1, "v", "v"),
            edge("e", 1, "w", "v"),
            edge("c", 1, "w", "w"),
            edge("d", 1, "w", "w"),
        ],
        squares: Vec::new(),
    }
}

pub fn two_vertex_graph() -> KGraph {
    KGraph::new(&two_vertex_raw_graph()).unwrap()
}

/// `Z` acting on [`two_vertex_raw_graph`]: an odometer on the loops at `w`,
/// fixing `e` and `f` with restriction `t`. Pseudo-free, with invariant vertex
/// sets `∅`, `{w}` and `{v, w}`.
pub fn two_vertex_raw() -> RawSystem {
    RawSystem {
        graph: two_vertex_raw_graph(),
        group: z(1),
        letters: vec![letter(
            "t",
            &[],
            &[("f", "f"), ("e", "e"), ("c", "d"), ("d", "c")],
            &[("f", "t"), ("e", "t"), ("c", "0"), ("d", "t")],
        )],
    }
}

pub fn two_vertex() -> SelfSimilarSystem {
    build(two_vertex_raw())
}

/// Vertices `v, w`, an edge `e` from `w` into `v` and a loop `c` at `w`;
/// trivial group.
pub fn chain_raw() -> RawSystem {
    RawSystem {
        graph: RawKGraph {
            k: 1,
            vertices: vec!["v".into(), "w".into()],
            edges: vec![edge("e", 1, "w", "v"), edge("c", 1, "w", "w")],
            squares: Vec::new(),
        },
        group: trivial_group(),
        letters: Vec::new(),
    }
}

pub fn chain() -> SelfSimilarSystem {
    build(chain_raw())
}

/// The binary adding machine: `Z = <t>` on the rose `{a, b}` with
/// `t.a = b, φ(t,a) = 0` and `t.b = a, φ(t,b) = t`.
pub fn adding_machine_raw() -> RawSystem {
    RawSystem {
        graph: rose_raw_graph(2),
        group: z(1),
        letters: vec![letter("t", &[], &[("a", "b"), ("b", "a")], &[("a", "0"), ("b", "t")])],
    }
}

pub fn adding_machine() -> SelfSimilarSystem {
    build(adding_machine_raw())
}

/// The adding machine with the tables of `-t` given explicitly.
pub fn adding_machine_explicit_raw() -> RawSystem {
    let mut raw = adding_machine_raw();
    raw.letters.push(letter("-t", &[], &[("a", "b"), ("b", "a")], &[("a", "-t"), ("b", "0")]));
    raw
}

/// [`adding_machine_explicit_raw`] with `φ(t, b)` set to `0`.
pub fn corrupted_adding_machine_raw() -> RawSystem {
    let mut raw = adding_machine_explicit_raw();
    raw.letters[0].cocycle = pairs(&[("a", "0"), ("b", "0")]);
    raw
}

/// `Z/2` acting trivially on the rose with trivial cocycle.
pub fn rose_trivial_z2(n: usize) -> SelfSimilarSystem {
    let graph = rose_raw_graph(n);
    let edges: Vec<(String, String)> = graph.edges.iter().map(|e| (e.id.clone(), e.id.clone())).collect();
    let cocycle: Vec<(String, String)> = graph.edges.iter().map(|e| (e.id.clone(), "0".into())).collect();
    build(RawSystem {
        graph,
        group: z2(),
        letters: vec![RawLetter { element: "1".into(), vertex_action: Vec::new(), edge_action: edges, cocycle }],
    })
}

/// `Z/2` swapping the petals of the 2-rose with trivial cocycle.
pub fn rose_swap_z2() -> SelfSimilarSystem {
    build(RawSystem {
        graph: rose_raw_graph(2),
        group: z2(),
        letters: vec![letter("1", &[], &[("a", "b"), ("b", "a")], &[("a", "0"), ("b", "0")])],
    })
}

/// `Z` fixing the single loop with trivial restriction (not pseudo-free).
pub fn loop_trivial_z() -> SelfSimilarSystem {
    build(RawSystem {
        graph: rose_raw_graph(1),
        group: z(1),
        letters: vec![letter("t", &[], &[("a", "a")], &[("a", "0")])],
    })
}

/// Single vertex 2-graph with loops `a, b` (colour 1), `f, g` (colour 2) and
/// commuting squares.
pub fn product_raw_graph() -> RawKGraph {
    let mut squares = Vec::new();
    for x in ["a", "b"] {
        for y in ["f", "g"] {
            squares.push(square(x, y, y, x));
        }
    }
    RawKGraph {
        k: 2,
        vertices: vec!["v".into()],
        edges: vec![edge("a", 1, "v", "v"), edge("b", 1, "v", "v"), edge("f", 2, "v", "v"), edge("g", 2, "v", "v")],
        squares,
    }
}

/// `Z^2` on [`product_raw_graph`]: `t1` is the adding machine on colour 1 and
/// fixes colour 2 with restriction `t1`; `t2` likewise with the colours swapped.
pub fn odometer_2graph_raw() -> RawSystem {
    RawSystem {
        graph: product_raw_graph(),
        group: z(2),
        letters: vec![
            letter(
                "t1",
                &[],
                &[("a", "b"), ("b", "a"), ("f", "f"), ("g", "g")],
                &[("a", "0"), ("b", "t1"), ("f", "t1"), ("g", "t1")],
            ),
            letter(
                "t2",
                &[],
                &[("a", "a"), ("b", "b"), ("f", "g"), ("g", "f")],
                &[("a", "t2"), ("b", "t2"), ("f", "0"), ("g", "t2")],
            ),
        ],
    }
}

pub fn odometer_2graph() -> SelfSimilarSystem {
    build(odometer_2graph_raw())
}

fn cube_edges() -> Vec<RawEdge> {
    let mut edges = Vec::new();
    for (c, p) in [(1, "a"), (2, "b"), (3, "c")] {
        for i in 1..=2 {
            edges.push(edge(&format!("{p}{i}"), c, "v", "v"));
        }
    }
    edges
}

/// Single vertex 3-graph, two loops per colour, all squares commuting.
pub fn cube_raw_graph() -> RawKGraph {
    let mut squares = Vec::new();
    for (p, q) in [("a", "b"), ("a", "c"), ("b", "c")] {
        for i in 1..=2 {
            for j in 1..=2 {
                let (x, y) = (format!("{p}{i}"), format!("{q}{j}"));
                squares.push(square(&x, &y, &y, &x));
            }
        }
    }
    RawKGraph { k: 3, vertices: vec!["v".into()], edges: cube_edges(), squares }
}

pub fn cube_graph() -> KGraph {
    KGraph::new(&cube_raw_graph()).unwrap()
}

/// Bijective squares on the cube skeleton whose two reorderings of
/// `a1 b1 c2` disagree.
pub fn incoherent_cube_raw() -> RawKGraph {
    let mut raw = cube_raw_graph();
    let set = |raw: &mut RawKGraph, e: &str, f: &str, f2: &str, e2: &str| {
        let s = raw.squares.iter_mut().find(|s| s.e == e && s.f == f).unwrap();
        s.f2 = f2.into();
        s.e2 = e2.into();
    };
    set(&mut raw, "a2", "b1", "b2", "a2");
    set(&mut raw, "a2", "b2", "b1", "a2");
    set(&mut raw, "a1", "c2", "c1", "a2");
    set(&mut raw, "a2", "c1", "c2", "a1");
    raw
}

/// Every valid example in this module with a short name.
pub fn all() -> Vec<(&'static str, SelfSimilarSystem)> {
    vec![
        ("rose2", rose(2)),
        ("single-loop", single_loop()),
        ("square", square_system()),
        ("adding-machine", adding_machine()),
        ("two-vertex", two_vertex()),
        ("chain", chain()),
        ("rose-swap-z2", rose_swap_z2()),
        ("rose-trivial-z2", rose_trivial_z2(2)),
        ("loop-trivial-z", loop_trivial_z()),
        ("odometer-2graph", odometer_2graph()),
    ]
}
