#pragma once

#include "flpe/measurement/measurement.hpp"

#include <filesystem>
#include <string>

namespace flpe::test
{

inline system_spec three_process( std::string_view recipe, std::size_t crashes, std::size_t depth = 20 )
{
    system_spec s;
    s.values = { { 0 }, { 1 }, { 1 } };
    s.recipe = protocols::protocol_recipe::parse( recipe );
    s.budget = crash_budget::uniform( crashes );
    s.bounds.depth_bound = depth;
    return s;
}

inline exploration_result explore_spec( const system_spec& s )
{
    return explore( s.topology(), s.initial(), *s.protocol(), s.effective_budget(), s.bounds );
}

inline std::filesystem::path data_dir() { return FLPE_TEST_DATA; }

inline std::filesystem::path scratch_dir( const std::string& name )
{
    auto dir = std::filesystem::temp_directory_path() / ( "flpe-test-" + name );
    std::filesystem::remove_all( dir );
    std::filesystem::create_directories( dir );
    return dir;
}

} // namespace flpe::test
