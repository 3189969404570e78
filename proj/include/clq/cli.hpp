#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "clq/cluster.hpp"

namespace clq {

enum ExitCode { ExitOk = 0, ExitVerifyFail = 1, ExitUsage = 2, ExitLimit = 3 };

// "seeds=5000,terms=100000"; keys not given keep the values of base
Limits parse_limits(const std::string& text, Limits base = {});
// CLQ_LIMITS from the environment, if set
Limits default_limits();

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace clq
