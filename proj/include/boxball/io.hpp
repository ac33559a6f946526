// Copyright 2026 The boxball authors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file boxball/io.hpp
//! CSV and JSON serialization shared by the CLI and the experiments.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bbs.hpp"
#include "experiments.hpp"
#include "gaps.hpp"
#include "rational.hpp"
#include "reflection.hpp"
#include "skorokhod.hpp"
#include "srbm.hpp"

namespace boxball
{
//! Shortest decimal that round-trips to the same double
std::string format_double(double x);

using CsvComments = std::vector<std::pair<std::string, std::string>>;

/*!
 * Write "# key=value" comment lines, a header row, then the rows.
 * Fields are ASCII, comma separated, LF terminated.
 */
void write_csv(std::ostream& os, CsvComments const& comments, std::vector<std::string> const& columns,
               std::vector<std::vector<std::string>> const& rows);

struct CsvTable
{
    CsvComments comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    //! Index of a column; throws ValidationError when missing
    std::size_t column(std::string const& name) const;
    //! Value of a comment key, or empty
    std::string comment(std::string const& key) const;
};

CsvTable read_csv(std::istream& is);

//! Comma-separated integers, e.g. "1,2,4"
std::vector<std::int64_t> parse_int_list(std::string const& text);

//---------------------------------------------------------------------------//
// JSON
//---------------------------------------------------------------------------//

nlohmann::json to_json(RationalVector const& v);
//! Row-major array of "p/q" strings
nlohmann::json to_json(RationalMatrix const& m);
nlohmann::json to_json(BoundaryPartition const& partition);
nlohmann::json to_json(SCertificate const& cert);
nlohmann::json to_json(ExperimentConfig const& config);
nlohmann::json to_json(EstimateReport const& report);
nlohmann::json summary_json(ExperimentResult const& result);

//! Unknown keys are rejected so typos do not silently fall back to defaults
ExperimentConfig experiment_config_from_json(nlohmann::json const& j);

//---------------------------------------------------------------------------//
// TABLES
//---------------------------------------------------------------------------//

//! Per-trial CSV of an experiment with its resolved config as comments
void write_experiment_csv(std::ostream& os, ExperimentResult const& result);

//! t, pos_1..pos_d, eta_1..eta_d (coins of step t -> t+1; empty on the last row)
void write_trajectory_csv(std::ostream& os, CsvComments const& comments, SbbsPath const& path);

//! t, W_1.., X_1.., Y_1..Y_k, alpha_1..
void write_trace_csv(std::ostream& os, CsvComments const& comments, SkorokhodTrace const& trace);

//! t, w_1..w_m, y_1..y_m
void write_path_csv(std::ostream& os, CsvComments const& comments, PathSample const& path);

}  // namespace boxball
