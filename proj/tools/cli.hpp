#pragma once

namespace ottoref::cli {

/// Parse argv and dispatch to simulate / sweep / validate / figure.
/// Returns 0 on success, 1 on validation failure or non-convergence,
/// 2 on usage errors.
int run(int argc, const char* const* argv);

}  // namespace ottoref::cli
