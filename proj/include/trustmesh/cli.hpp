#pragma once

// Operator surface: ingest, validate, query, simulate, serve. JSON output by
// default (--human renders the same data as tables). Exit codes: 0 success,
// 1 domain negative or domain error, 2 usage/schema error, 3 store or IO
// error.

#include <iosfwd>
#include <string>
#include <vector>

namespace trustmesh::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trustmesh::cli
