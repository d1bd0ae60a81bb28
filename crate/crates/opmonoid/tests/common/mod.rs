#![allow(dead_code)]

pub mod rewrite;
