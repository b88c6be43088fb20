#pragma once

#include <stdexcept>
#include <string>

namespace sectorplan {

// Error types named after the condition they report. All carry a message
// suitable for CLI diagnostics.

struct ZeroVector : std::runtime_error {
    explicit ZeroVector(const std::string& msg) : std::runtime_error(msg) {}
};

struct GenerationFailed : std::runtime_error {
    explicit GenerationFailed(const std::string& msg) : std::runtime_error(msg) {}
};

// Scenario/result file could not be parsed. `line` is 1-based when known.
struct ParseError : std::runtime_error {
    int line = 0;
    ParseError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? msg + " (line " + std::to_string(line_no) + ")" : msg),
          line(line_no) {}
};

// File parsed but violates a model invariant; message names the field.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SourceBlocked : std::runtime_error {
    explicit SourceBlocked(const std::string& msg) : std::runtime_error(msg) {}
};

struct DestinationBlocked : std::runtime_error {
    explicit DestinationBlocked(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoGlobalPath : std::runtime_error {
    explicit NoGlobalPath(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by the bounded sampler after too many consecutive rejections;
// the planner reacts by widening the search angle.
struct SamplingExhausted : std::runtime_error {
    explicit SamplingExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

struct DigestMismatch : std::runtime_error {
    explicit DigestMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sectorplan
