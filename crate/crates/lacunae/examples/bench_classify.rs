use std::time::Instant;

fn main() {
    for j in [-3i64, -2, 2, 3, 4, 5] {
        let n_max = j.unsigned_abs() as u32 + 2;
        let len = 16usize;
        let t = Instant::now();
        let r = lacunae::sequences::classify_geometric(j, n_max, len).unwrap();
        println!(
            "j={j} n_max={n_max} len={len}: agrees={} i={} cj={} rj={} in {:?}",
            r.agrees, r.measured_i.level, r.measured_cj.level, r.measured_rj.level,
            t.elapsed()
        );
    }
}
