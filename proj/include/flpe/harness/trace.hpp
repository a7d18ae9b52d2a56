#pragma once

#include "flpe/core/transition.hpp"
#include "flpe/harness/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace flpe::harness
{

// Line-delimited JSON. The first line describes the system (enough to
// rebuild it), every further line is one step:
//   {"format":"flpe-trace","version":1,"scenario":...,"seed":...,...}
//   {"step":1,"event":"start","process":0,"digest":"...","decided":[]}
//   {"step":2,"event":"deliver","kind":"value","src":0,"dst":1,"seq":0,"value":0,...}
struct trace
{
    scenario source;         // system, budget, seed and bounds from the header
    std::string adversary;   // as written in the header
    bool truncated = false;
    std::vector< event > events;
    std::vector< std::string > digests;  // per step
};

void write_trace( std::ostream& out, const scenario& source, const execution& ex,
                  std::string_view adversary_label = {} );
void write_trace_file( const std::filesystem::path& path, const scenario& source, const execution& ex,
                       std::string_view adversary_label = {} );

// Throws configuration_error for malformed input.
[[nodiscard]] trace read_trace( std::istream& in );
[[nodiscard]] trace read_trace_file( const std::filesystem::path& path );

// Replays the recorded events against the rebuilt system and checks every
// digest. Throws configuration_error on any mismatch.
[[nodiscard]] execution replay_trace( const trace& t );

} // namespace flpe::harness
