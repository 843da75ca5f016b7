use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use syntaxpoly::ingest::DatasetName;

use crate::cache::CACHE_ENV;
use crate::output::Format;

/// Dependency-tree polynomials and treebank-scale syntax comparison.
#[derive(Debug, Parser)]
#[command(name = "syntaxpoly", version)]
pub struct Cli {
    /// Worker threads; 0 uses one per core. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the term vectors of every sentence in a CoNLL-U file.
    Poly {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Use the two-variable unlabelled polynomial.
        #[arg(long)]
        unlabeled: bool,
    },
    /// Distances between same-id sentences of two CoNLL-U files.
    Dist {
        a: PathBuf,
        b: PathBuf,
        /// Only this sentence id.
        #[arg(long)]
        sent_id: Option<String>,
        #[arg(long)]
        unlabeled: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Language distance matrix, or the translation matrix of one sentence.
    Matrix {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        sent_id: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Mean, median and extreme pairs of the language distance matrix.
    Summary {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// UPGMA dendrogram of the language distance matrix (Newick by default).
    Cluster {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Also write an SVG rendering here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Classical multidimensional scaling of the language distance matrix.
    Mds {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, default_value_t = 2)]
        dims: usize,
        /// Also write an SVG scatter plot here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Pairwise sentence distances within each language: diameter, mean, histogram.
    Diversity {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Histogram bin width, e.g. `0.5` or `1/4`.
        #[arg(long, default_value = "0.5")]
        bin_width: String,
    },
    /// Sentences with the smallest and largest distance between two languages.
    Extremes {
        #[command(flatten)]
        data: DataArgs,
        lang_a: String,
        lang_b: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// All artifacts of one split into a directory.
    Pipeline {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value = "0.5")]
        bin_width: String,
        /// Add exact rationals next to rounded values.
        #[arg(long)]
        exact: bool,
        /// Also write SVG renderings.
        #[arg(long)]
        svg: bool,
        /// Skip the all-pairs diversity statistics.
        #[arg(long)]
        no_diversity: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// Directory holding one `*.conllu` treebank per language.
    #[arg(long)]
    pub dataset_dir: PathBuf,
    /// Dataset named by the original language of its sentences.
    #[arg(long)]
    pub split: DatasetName,
    /// `sent_id<TAB>SPLIT` lines; derived from sentence ids when absent.
    #[arg(long)]
    pub split_file: Option<PathBuf>,
    /// Comma-separated languages; all twenty are required when absent.
    #[arg(long, value_delimiter = ',')]
    pub langs: Option<Vec<String>>,
    #[arg(long, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Treebank release to record, overriding detection.
    #[arg(long)]
    pub ud_version: Option<String>,
    /// Record that the treebank release differs from the reference one.
    #[arg(long)]
    pub release_differs: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Emit exact rationals `p/q`.
    #[arg(long)]
    pub exact: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
