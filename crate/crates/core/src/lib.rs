pub mod cli;
pub mod glattice;
pub mod gmod;
pub mod hyper;
pub mod kac;
pub mod linalg;
pub mod oracle;
pub mod pi0;
pub mod rootdata;
pub mod structure;
pub mod torus;
