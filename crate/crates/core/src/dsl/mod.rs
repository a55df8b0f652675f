//! The `.box` surface syntax.
//!
//! ```text
//! file    := { pattern } ;
//! pattern := "pattern" STRING "{" { stmt } "}" ;
//! stmt    := node | edge | meta ;
//! node    := "node" IDENT ":" TYPEPATH [ STRING ] ;
//! edge    := "edge" IDENT "->" IDENT ;
//! meta    := "meta" IDENT "=" STRING ;
//! ```
//!
//! `#` starts a line comment. The optional string after a node's type is a
//! display label.

mod lexer;
mod parser;
mod printer;

pub use parser::{parse, parse_located, Located, Spans};
pub use printer::{print, print_all};
