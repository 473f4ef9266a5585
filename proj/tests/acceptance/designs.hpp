#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emonet/pipeline.hpp"
#include "emonet/synth.hpp"

namespace acceptance {

// Ten words per dimension, baseline rate 0.05, `days` one-day windows.
emonet::SynthSpec base_spec(std::uint64_t seed, std::size_t posts, int days);

// Planted structure with a distinct expected strength for each of the 21
// emotion links: 12, 10, 8, 6, 4, 2 planted pairs inside the six dimensions
// and 0..14 between them, each with joint rate `rate`.
std::vector<emonet::PlantedPair> graded_structure(double rate);

// Windowed in-memory analysis of a synthetic corpus; one result per window.
std::vector<emonet::WindowAnalysis> analyze_synthetic(const emonet::SynthSpec& spec,
                                                      const emonet::AnalysisParams& params,
                                                      const std::string& dataset);

}  // namespace acceptance
