// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qudisim::cli::main_with_args(std::env::args_os()))
}
