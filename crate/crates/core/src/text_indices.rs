//! Readability formulas and shallow surface features of a sample's text.
//!
//! Operands come from a fixed extractor so every formula is reproducible:
//! sentences end at a run of `.`, `!` or `?` followed by whitespace or the
//! end of text; tokens are whitespace-separated chunks with punctuation
//! stripped from both ends; syllables count maximal runs of `aeiouy`, minus a
//! trailing silent `e`, at least one per token.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TextIndexKind {
    GunningFog,
    NewAri,
    FleschKincaidGrade,
    LinsearWrite,
    ColemanLiau,
    Smog,
    AvgCharsPerToken,
    AvgCharsPerSentence,
    AvgSyllablesPerToken,
    AvgSyllablesPerSentence,
    SentenceLength,
    TokenSentenceRatio,
    TokenSentenceMultiply,
}

/// Traditional readability formulas vs shallow surface features.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextFamily {
    TraF,
    ShaF,
}

impl TextIndexKind {
    pub const ALL: [TextIndexKind; 13] = [
        TextIndexKind::GunningFog,
        TextIndexKind::NewAri,
        TextIndexKind::FleschKincaidGrade,
        TextIndexKind::LinsearWrite,
        TextIndexKind::ColemanLiau,
        TextIndexKind::Smog,
        TextIndexKind::AvgCharsPerToken,
        TextIndexKind::AvgCharsPerSentence,
        TextIndexKind::AvgSyllablesPerToken,
        TextIndexKind::AvgSyllablesPerSentence,
        TextIndexKind::SentenceLength,
        TextIndexKind::TokenSentenceRatio,
        TextIndexKind::TokenSentenceMultiply,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TextIndexKind::GunningFog => "gunning_fog",
            TextIndexKind::NewAri => "new_ari",
            TextIndexKind::FleschKincaidGrade => "flesch_kincaid_grade",
            TextIndexKind::LinsearWrite => "linsear_write",
            TextIndexKind::ColemanLiau => "coleman_liau",
            TextIndexKind::Smog => "smog",
            TextIndexKind::AvgCharsPerToken => "avg_chars_per_token",
            TextIndexKind::AvgCharsPerSentence => "avg_chars_per_sentence",
            TextIndexKind::AvgSyllablesPerToken => "avg_syllables_per_token",
            TextIndexKind::AvgSyllablesPerSentence => "avg_syllables_per_sentence",
            TextIndexKind::SentenceLength => "sentence_length",
            TextIndexKind::TokenSentenceRatio => "token_sentence_ratio",
            TextIndexKind::TokenSentenceMultiply => "token_sentence_multiply",
        }
    }

    pub fn family(self) -> TextFamily {
        match self {
            TextIndexKind::GunningFog
            | TextIndexKind::NewAri
            | TextIndexKind::FleschKincaidGrade
            | TextIndexKind::LinsearWrite
            | TextIndexKind::ColemanLiau
            | TextIndexKind::Smog => TextFamily::TraF,
            _ => TextFamily::ShaF,
        }
    }
}

impl FromStr for TextIndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TextIndexKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown text index {s:?}")))
    }
}

impl fmt::Display for TextIndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for TextFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TextFamily::TraF => "TraF",
            TextFamily::ShaF => "ShaF",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TextStats {
    pub sentences: usize,
    pub tokens: usize,
    /// Letters and digits.
    pub characters: usize,
    pub syllables: usize,
    /// Tokens with three or more syllables.
    pub complex_words: usize,
    pub polysyllables: usize,
    /// Tokens with at most two syllables.
    pub easy_words: usize,
    pub hard_words: usize,
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

pub fn count_syllables(token: &str) -> usize {
    let lower: Vec<char> = token.chars().flat_map(char::to_lowercase).collect();
    let mut runs = 0;
    let mut prev_vowel = false;
    for &c in &lower {
        let v = is_vowel(c);
        if v && !prev_vowel {
            runs += 1;
        }
        prev_vowel = v;
    }
    let n = lower.len();
    // silent final 'e' forms its own one-letter vowel run
    if n >= 2 && lower[n - 1] == 'e' && !is_vowel(lower[n - 2]) && runs > 0 {
        runs -= 1;
    }
    runs.max(1)
}

fn count_sentences(text: &str) -> usize {
    let chars: Vec<char> = text.chars().collect();
    let mut count = 0;
    let mut has_content = false;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if matches!(c, '.' | '!' | '?') {
            let mut j = i;
            while j < chars.len() && matches!(chars[j], '.' | '!' | '?') {
                j += 1;
            }
            if j == chars.len() || chars[j].is_whitespace() {
                if has_content {
                    count += 1;
                }
                has_content = false;
            }
            i = j;
            continue;
        }
        if c.is_alphanumeric() {
            has_content = true;
        }
        i += 1;
    }
    if has_content {
        count += 1;
    }
    count
}

pub fn analyze_text(text: &str) -> TextStats {
    let mut stats = TextStats {
        sentences: count_sentences(text),
        ..TextStats::default()
    };
    for raw in text.split_whitespace() {
        let token = raw.trim_matches(|c: char| !c.is_alphanumeric());
        if token.is_empty() {
            continue;
        }
        stats.tokens += 1;
        stats.characters += token.chars().filter(|c| c.is_alphanumeric()).count();
        let syl = count_syllables(token);
        stats.syllables += syl;
        if syl >= 3 {
            stats.complex_words += 1;
            stats.polysyllables += 1;
            stats.hard_words += 1;
        } else {
            stats.easy_words += 1;
        }
    }
    stats
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

pub fn compute_text_index(kind: TextIndexKind, s: &TextStats) -> f64 {
    let words = s.tokens as f64;
    let sentences = s.sentences as f64;
    let chars = s.characters as f64;
    let syl = s.syllables as f64;
    if s.tokens == 0 || s.sentences == 0 {
        return match kind {
            TextIndexKind::Smog if s.sentences > 0 => 3.1291,
            _ => 0.0,
        };
    }
    let value = match kind {
        TextIndexKind::GunningFog => {
            0.4 * (words / sentences + 100.0 * (s.complex_words as f64 / words))
        }
        TextIndexKind::NewAri => 4.71 * (chars / words + 0.5 * (words / sentences)),
        TextIndexKind::FleschKincaidGrade => 0.39 * (words / sentences + 11.8 * (syl / words)),
        TextIndexKind::LinsearWrite => {
            let r = (s.easy_words as f64 + 3.0 * s.hard_words as f64) / sentences;
            if r > 20.0 {
                r / 2.0
            } else {
                r / 2.0 - 1.0
            }
        }
        TextIndexKind::ColemanLiau => {
            let l = chars / words * 100.0;
            let sv = sentences / words * 100.0;
            0.0588 * l - 0.296 * sv - 15.8
        }
        TextIndexKind::Smog => 1.0430 * (s.polysyllables as f64 * 30.0 / sentences).sqrt() + 3.1291,
        TextIndexKind::AvgCharsPerToken => chars / words,
        TextIndexKind::AvgCharsPerSentence => chars / sentences,
        TextIndexKind::AvgSyllablesPerToken => syl / words,
        TextIndexKind::AvgSyllablesPerSentence => syl / sentences,
        TextIndexKind::SentenceLength => words / sentences,
        TextIndexKind::TokenSentenceRatio => ratio(words.ln(), sentences.ln()),
        TextIndexKind::TokenSentenceMultiply => (words * sentences).sqrt(),
    };
    if value.is_finite() {
        value
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_all_zero() {
        let s = analyze_text("");
        assert_eq!(s, TextStats::default());
        for k in TextIndexKind::ALL {
            assert_eq!(compute_text_index(k, &s), 0.0, "{k}");
        }
    }

    #[test]
    fn cat_sat() {
        let s = analyze_text("The cat sat.");
        assert_eq!((s.sentences, s.tokens, s.characters), (1, 3, 9));
    }

    #[test]
    fn syllable_heuristic() {
        assert_eq!(count_syllables("communication"), 5);
        assert_eq!(count_syllables("the"), 1);
        assert_eq!(count_syllables("make"), 1);
        assert_eq!(count_syllables("free"), 1);
        assert_eq!(count_syllables("2024"), 1);
        assert_eq!(count_syllables("Readability"), 5);
    }

    #[test]
    fn sentence_splitting() {
        assert_eq!(analyze_text("Hi there. How are you?! Fine").sentences, 3);
        assert_eq!(analyze_text("Version 3.5 is out.").sentences, 1);
        assert_eq!(analyze_text("...").sentences, 0);
        assert_eq!(analyze_text("no terminal punctuation").sentences, 1);
    }

    #[test]
    fn token_sentence_multiply_example() {
        let s = TextStats {
            tokens: 9,
            sentences: 4,
            ..Default::default()
        };
        assert_eq!(compute_text_index(TextIndexKind::TokenSentenceMultiply, &s), 6.0);
    }

    #[test]
    fn coleman_liau_example() {
        let s = analyze_text("The cat sat on the mat.");
        assert_eq!((s.characters, s.tokens, s.sentences), (17, 6, 1));
        let oracle = 0.0588 * (1700.0 / 6.0) - 0.296 * (100.0 / 6.0) - 15.8;
        let v = compute_text_index(TextIndexKind::ColemanLiau, &s);
        assert!((v - oracle).abs() < 1e-12);
        assert!((v - (-4.073)).abs() < 1e-3);
    }

    #[test]
    fn smog_with_no_polysyllables() {
        let s = analyze_text("The cat sat.");
        assert_eq!(compute_text_index(TextIndexKind::Smog, &s), 3.1291);
    }

    #[test]
    fn linsear_branches() {
        let short = TextStats {
            sentences: 1,
            tokens: 4,
            easy_words: 3,
            hard_words: 1,
            ..Default::default()
        };
        // r = 6 -> 6 / 2 - 1
        assert_eq!(compute_text_index(TextIndexKind::LinsearWrite, &short), 2.0);
        let long = TextStats {
            sentences: 1,
            tokens: 22,
            easy_words: 22,
            ..Default::default()
        };
        assert_eq!(compute_text_index(TextIndexKind::LinsearWrite, &long), 11.0);
    }

    #[test]
    fn single_sentence_ratio_is_zero() {
        let s = analyze_text("one two three.");
        assert_eq!(compute_text_index(TextIndexKind::TokenSentenceRatio, &s), 0.0);
        let s = analyze_text("one two three. four five six seven eight nine.");
        let expected = 9f64.ln() / 2f64.ln();
        assert!((compute_text_index(TextIndexKind::TokenSentenceRatio, &s) - expected).abs() < 1e-12);
    }
}
