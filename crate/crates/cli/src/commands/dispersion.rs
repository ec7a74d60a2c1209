use anyhow::Result;
use splab::family::dispersion_omega;

use crate::args::DispersionArgs;
use crate::output::{fmt_num, Run};

pub fn run(args: DispersionArgs) -> Result<()> {
    let omega = dispersion_omega(args.p, args.a, args.b)?;
    println!("{}", fmt_num(omega));
    if args.common.manifest.is_some() {
        let mut run = Run::new("dispersion", &args.common);
        run.param("p", args.p);
        run.param("a", args.a);
        run.param("b", args.b);
        run.result("omega", omega);
        run.finish()?;
    }
    Ok(())
}
