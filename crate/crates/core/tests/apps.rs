mod common;

use std::collections::HashSet;

use common::*;
use flowkit::apps::*;
use flowkit::numeric::int;
use rand::Rng;

#[test]
fn matching_agrees_with_permutation_search() {
    let mut r = rng(31);
    let mut perfect = 0;
    for _ in 0..100 {
        let n = r.gen_range(1..=6);
        let density = r.gen_range(0.2..0.9);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|v| (0..n).map(move |w| (v, w)))
            .filter(|_| r.gen_bool(density))
            .collect();
        let g = BipartiteGraph::new(n, edges.iter().copied()).unwrap();
        let expected = brute_force_has_perfect_matching(n, &edges);
        match perfect_matching(&g).unwrap() {
            MatchingOutcome::Perfect(partner) => {
                assert!(expected);
                perfect += 1;
                assert_eq!(partner.iter().collect::<HashSet<_>>().len(), n);
                assert!((0..n).all(|v| g.has_edge(v, partner[v])));
            }
            MatchingOutcome::HallViolation(s) => {
                assert!(!expected);
                assert!(!s.is_empty());
                assert!(neighborhood(&g, &s).len() < s.len());
            }
        }
    }
    assert!(perfect > 0 && perfect < 100);
}

fn random_poset(r: &mut impl Rng) -> Poset {
    let inner = r.gen_range(1..=7);
    let n = inner + 2;
    let top = n - 1;
    let mut pairs = Vec::new();
    for x in 1..=inner {
        pairs.push((0, x));
        pairs.push((x, top));
        for y in x + 1..=inner {
            if r.gen_bool(0.35) {
                pairs.push((x, y));
            }
        }
    }
    let names = (0..n).map(|i| format!("x{i}")).collect();
    Poset::from_relation(names, &pairs, 0, top).unwrap()
}

#[test]
fn chains_agree_with_exhaustive_packing() {
    let mut r = rng(32);
    for _ in 0..50 {
        let p = random_poset(&mut r);
        let mut covers = vec![Vec::new(); p.len()];
        for (a, b) in p.cover_pairs() {
            covers[a].push(b);
        }
        let all = cover_paths(&covers, p.bottom(), p.top());
        let chains = max_disjoint_chains(&p).unwrap();
        assert_eq!(chains.len(), brute_force_max_disjoint(&all));
        let mut used = HashSet::new();
        for c in &chains {
            assert!(p.is_maximal_chain(c), "{c:?}");
            for w in c.windows(2) {
                assert!(used.insert((w[0], w[1])), "cover {w:?} reused");
            }
        }
    }
}

#[test]
fn poset_text_parses() {
    let text = "el 0\nel a\nel b\nel 1\ncover 0 a\ncover 0 b\ncover a 1\ncover b 1\nbottom 0\ntop 1\n";
    let p = Poset::parse(text).unwrap();
    assert_eq!(max_disjoint_chains(&p).unwrap().len(), 2);
}

fn pixel_image(raw: &RawImage) -> PixelImage {
    PixelImage::new(
        raw.w,
        raw.h,
        raw.a.clone(),
        raw.b.clone(),
        raw.right.concat(),
        raw.down.concat(),
    )
    .unwrap()
}

#[test]
fn segmentation_agrees_with_exhaustive_search() {
    let mut r = rng(33);
    for _ in 0..50 {
        let raw = random_image(&mut r, 3, 3);
        let img = pixel_image(&raw);
        let seg = segment_image(&img).unwrap();
        assert_eq!(seg.score, brute_force_segmentation(&raw));
        assert_eq!(&seg.score + &seg.cost, seg.total);
        assert_eq!(seg.total, img.total());
        assert_eq!(seg.cost, seg.cut_capacity);
        assert_eq!(img.score(&seg.foreground), seg.score);
    }
}

#[test]
fn segmentation_of_rectangular_images() {
    let mut r = rng(34);
    for (w, h) in [(1, 1), (1, 4), (4, 1), (2, 3)] {
        let raw = random_image(&mut r, w.max(1), h.max(1));
        let seg = segment_image(&pixel_image(&raw)).unwrap();
        assert_eq!(seg.score, brute_force_segmentation(&raw));
    }
}

#[test]
fn pgm_round_trip_keeps_a_bright_square() {
    let pgm = "P2\n4 4\n255\n0 0 0 0\n0 255 255 0\n0 255 255 0\n0 0 0 0\n";
    let img = PixelImage::from_pgm(pgm, int(0)).unwrap();
    let seg = segment_image(&img).unwrap();
    let pbm = write_pbm(4, 4, &seg.foreground);
    assert!(pbm.starts_with("P1\n4 4\n"));
    let on: Vec<usize> = (0..16).filter(|&v| seg.foreground[v]).collect();
    assert_eq!(on, vec![5, 6, 9, 10]);
}
