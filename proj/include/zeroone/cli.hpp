#ifndef ZEROONE_CLI_HPP
#define ZEROONE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "zeroone/error.hpp"

namespace zeroone {

/// 0 ok, 1 usage or syntax, 2 validation, 3 resource limit.
int exit_code(ErrorKind kind);

/// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace zeroone

#endif  // ZEROONE_CLI_HPP
