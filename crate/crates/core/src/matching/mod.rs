//! Matching verification (placeholder during bring-up).
