//! Oracles shared by several test targets.
#![allow(dead_code, clippy::excessive_precision)]

use ciprng::graphgen::IterationGraph;

pub enum Kernel {
    Igamc,
    Erfc,
}

/// `(kernel, a, x, value)` from mpmath at 50 significant digits; `x` is
/// unused for erfc.
#[rustfmt::skip]
pub const KERNEL_POINTS: [(Kernel, f64, f64, f64); 20] = [
    (Kernel::Igamc, 0.5, 0.25, 0.47950012218695346232),
    (Kernel::Igamc, 1.5, 3.0, 0.11161022509471255998),
    (Kernel::Igamc, 4.5, 2.0, 0.9114125268316791714),
    (Kernel::Igamc, 4.5, 20.0, 7.5985252294642759823e-6),
    (Kernel::Igamc, 4.5, 450.0, 6.1868010323945733129e-188),
    (Kernel::Igamc, 2.5, 0.3, 0.9880032427940937345),
    (Kernel::Igamc, 0.5, 0.001, 0.96432940827032011458),
    (Kernel::Igamc, 64.0, 80.0, 0.029048874802733248447),
    (Kernel::Igamc, 128.0, 100.0, 0.99600537970596441149),
    (Kernel::Igamc, 256.0, 250.0, 0.63948933637145858649),
    (Kernel::Igamc, 256.0, 300.0, 0.0043054827324579141401),
    (Kernel::Igamc, 512.0, 530.0, 0.21155165540565436888),
    (Kernel::Igamc, 512.0, 400.0, 0.99999995605165331834),
    (Kernel::Igamc, 3.0, 7.5, 0.020256715056664404981),
    (Kernel::Erfc, 0.1, 0.0, 0.8875370839817151016),
    (Kernel::Erfc, 0.5, 0.0, 0.47950012218695346232),
    (Kernel::Erfc, 1.0, 0.0, 0.15729920705028513066),
    (Kernel::Erfc, 3.0, 0.0, 0.000022090496998585441373),
    (Kernel::Erfc, 5.0, 0.0, 1.5374597944280348502e-12),
    (Kernel::Erfc, -1.2, 0.0, 1.9103139782296353684),
];

/// Strong connectivity from the transitive closure (Floyd-Warshall).
#[allow(clippy::needless_range_loop)]
pub fn brute_force_strongly_connected(g: &IterationGraph) -> bool {
    let size = g.vertex_count();
    let mut reach = vec![vec![false; size]; size];
    for (x, row) in reach.iter_mut().enumerate() {
        row[x] = true;
        for y in g.successors(x as u32) {
            row[y as usize] = true;
        }
    }
    for k in 0..size {
        for i in 0..size {
            if reach[i][k] {
                for j in 0..size {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&r| r))
}
