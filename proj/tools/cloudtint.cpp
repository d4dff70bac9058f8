// SPDX-License-Identifier: Apache-2.0

#include "cloudtint/cli/app.hpp"

int main(int argc, char** argv) { return cloudtint::cli::run(argc, argv); }
