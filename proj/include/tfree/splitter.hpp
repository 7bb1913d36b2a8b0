#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tfree/token.hpp"

namespace tfree {

// Deterministic text segmentation with byte-exact reconstruction.
//
// split() cuts text into Word / Digit / Special tokens plus whitespace
// control tokens. A single space between two tokens is implicit whenever
// the rule set predicts one, so plain prose carries no whitespace tokens
// at all. Deviations from the prediction emit Ws (space present where
// none is implied) or NoWs (space absent where one is implied). Runs of
// 2/4/8 identical spaces or newlines collapse into WsRun tokens, largest
// first. join() inverts all of this: join(split(t), cfg) == t byte-exact
// for any valid UTF-8 input t.
std::vector<Token> split(std::string_view text, const SplitConfig& cfg = {});

std::string join(std::span<const Token> tokens, const SplitConfig& cfg = {});

// True when the rule set implies a single space between two adjacent
// content tokens. Exposed for join() and the analysis module.
bool implicit_space(const Token& prev, const Token& next, const SplitConfig& cfg);

// Codepoint classification shared with the analysis module. Word
// characters are ASCII letters, underscore, and every non-ASCII
// codepoint that is not whitespace; ASCII digits always split out.
bool is_word_codepoint(std::uint32_t cp);
bool is_whitespace_codepoint(std::uint32_t cp);

// Decodes one UTF-8 codepoint at `pos`, advancing it. Throws InputError
// on malformed input (overlong forms, surrogates, truncation).
std::uint32_t decode_utf8(std::string_view text, std::size_t& pos);

// The single token a piece of text denotes. Control tags ("<ws>",
// "<no_ws>", "<ws2>", "<ws4>", "<ws8>") map to their control tokens;
// anything else must split into exactly one content token whose text is
// the input, or InputError is thrown. This is how dictionary entries and
// decoded words become tokens again.
Token token_from_text(std::string_view text, const SplitConfig& cfg = {});

}  // namespace tfree
