#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(exp) = igsic_cli::parse_config(data) {
        // Anything accepted must be usable by the solvers.
        assert!(!exp.alphas.is_empty());
        assert!(exp.alphas.iter().all(|a| (0.0..=1.0).contains(a)));
        assert!(exp.power.p1 > 0.0 && exp.power.p2 > 0.0 && exp.power.noise_var > 0.0);
    }
});
