// SPDX-License-Identifier: Apache-2.0
//
// risloc: simulator and estimators for RIS-assisted device-free drone localization
// Copyright (C) 2026 risloc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Exercises the shared library through its C interface only

#include "risloc.h"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace
{
    const char *small_json = R"({
        "arrays": {"bs": {"dims": [4, 4]}, "ris": {"dims": [3, 3]}, "ue": {"dims": [2, 2]}},
        "sounding": {"grid": [3, 3]},
        "estimator": {"restarts": 2, "max_iters": 100},
        "sweep": {"snr_db": [0, 10], "K": [12], "trials": 2, "threads": 1}
    })";

    struct Config
    {
        risloc_config *p = nullptr;
        ~Config() { risloc_config_free(p); }
    };

    struct Sweep
    {
        risloc_sweep *p = nullptr;
        ~Sweep() { risloc_sweep_free(p); }
    };

    int progress_calls = 0;
    void count_progress(const risloc_sweep_row *, void *user)
    {
        ++progress_calls;
        ++*static_cast<int *>(user);
    }
}

TEST_CASE("version and status strings")
{
    CHECK(std::string(risloc_version()) == "0.1.0");
    CHECK(std::string(risloc_status_string(RISLOC_OK)) == "ok");
    CHECK(std::string(risloc_status_string(RISLOC_ERR_CONFIG)).size() > 0);
    CHECK(std::string(risloc_status_string(static_cast<risloc_status>(99))) == "unknown status");
}

TEST_CASE("null arguments are rejected")
{
    CHECK(risloc_config_default(nullptr) == RISLOC_ERR_INVALID_ARGUMENT);
    CHECK(risloc_config_set_seed(nullptr, 1) == RISLOC_ERR_INVALID_ARGUMENT);
    CHECK(risloc_run_crlb_sweep(nullptr, nullptr) == RISLOC_ERR_INVALID_ARGUMENT);
    CHECK(risloc_sweep_row_count(nullptr) == 0);
    CHECK(std::string(risloc_last_error()).size() > 0);
    risloc_config_free(nullptr);
    risloc_sweep_free(nullptr);
}

TEST_CASE("configuration errors map to RISLOC_ERR_CONFIG")
{
    Config c;
    CHECK(risloc_config_load_string("{\"bogus\": 1}", &c.p) == RISLOC_ERR_CONFIG);
    CHECK(c.p == nullptr);
    CHECK(std::string(risloc_last_error()).find("bogus") != std::string::npos);
    CHECK(risloc_config_load_file("/nonexistent/x.json", &c.p) == RISLOC_ERR_CONFIG);
    CHECK(std::string(risloc_last_error()).find("/nonexistent/x.json") != std::string::npos);

    REQUIRE(risloc_config_load_string(small_json, &c.p) == RISLOC_OK);
    CHECK(std::string(risloc_last_error()).empty());
    CHECK(risloc_config_set_trials(c.p, 0) == RISLOC_ERR_CONFIG);
    CHECK(risloc_config_set_snr_range(c.p, "1:0:1") == RISLOC_ERR_CONFIG);
    const int bad_k = 0;
    CHECK(risloc_config_set_k_list(c.p, &bad_k, 1) == RISLOC_ERR_CONFIG);
    CHECK(risloc_config_set_k_list(c.p, &bad_k, 0) == RISLOC_ERR_CONFIG);

    // a failed setter leaves the configuration usable and unchanged
    Sweep s;
    REQUIRE(risloc_run_crlb_sweep(c.p, &s.p) == RISLOC_OK);
    CHECK(risloc_sweep_row_count(s.p) == 2);
}

TEST_CASE("bound sweep through the C interface")
{
    Config c;
    REQUIRE(risloc_config_load_string(small_json, &c.p) == RISLOC_OK);
    const int ks[] = {6, 12};
    REQUIRE(risloc_config_set_k_list(c.p, ks, 2) == RISLOC_OK);
    REQUIRE(risloc_config_set_snr_range(c.p, "-10:10:10") == RISLOC_OK);
    Sweep s;
    REQUIRE(risloc_run_crlb_sweep(c.p, &s.p) == RISLOC_OK);
    REQUIRE(risloc_sweep_row_count(s.p) == 6);
    risloc_sweep_row r0{}, r2{};
    REQUIRE(risloc_sweep_get_row(s.p, 0, &r0) == RISLOC_OK);
    REQUIRE(risloc_sweep_get_row(s.p, 2, &r2) == RISLOC_OK);
    CHECK(r0.K == 6);
    CHECK(r0.has_rmse == 0);
    CHECK(r2.snr_db == 10.0);
    CHECK(r2.peb_m == doctest::Approx(r0.peb_m / 10.0).epsilon(1e-9));
    risloc_sweep_row dummy{};
    CHECK(risloc_sweep_get_row(s.p, 6, &dummy) == RISLOC_ERR_INVALID_ARGUMENT);

    double peb = 0.0;
    REQUIRE(risloc_peb(c.p, -10.0, 6, 1.0, 1, &peb) == RISLOC_OK);
    CHECK(peb == doctest::Approx(r0.peb_m).epsilon(1e-12));

    const std::string path = "capi_bounds.csv";
    REQUIRE(risloc_sweep_write_csv(s.p, path.c_str()) == RISLOC_OK);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "snr_db,K,zeta,ris,peb_m,rmse_m,trials,mean_iterations,failures");
    in.close();
    std::remove(path.c_str());
    CHECK(risloc_sweep_write_csv(s.p, "/nonexistent/dir/out.csv") == RISLOC_ERR_IO);
}

TEST_CASE("Monte Carlo sweep, progress callback and determinism")
{
    Config c;
    REQUIRE(risloc_config_load_string(small_json, &c.p) == RISLOC_OK);
    REQUIRE(risloc_config_set_seed(c.p, 3) == RISLOC_OK);
    int user = 0;
    progress_calls = 0;
    Sweep a, b;
    REQUIRE(risloc_run_rmse_sweep(c.p, count_progress, &user, &a.p) == RISLOC_OK);
    CHECK(user == 2);
    CHECK(progress_calls == 2);
    REQUIRE(risloc_config_set_threads(c.p, 2) == RISLOC_OK);
    REQUIRE(risloc_run_rmse_sweep(c.p, nullptr, nullptr, &b.p) == RISLOC_OK);
    for (size_t i = 0; i < 2; ++i)
    {
        risloc_sweep_row ra{}, rb{};
        risloc_sweep_get_row(a.p, i, &ra);
        risloc_sweep_get_row(b.p, i, &rb);
        CHECK(ra.has_rmse == 1);
        CHECK(ra.trials == 2);
        CHECK(ra.rmse_m == rb.rmse_m);
        CHECK(std::isfinite(ra.rmse_m));
    }
}

TEST_CASE("single run and the no-RIS baseline")
{
    Config c;
    REQUIRE(risloc_config_load_string(small_json, &c.p) == RISLOC_OK);
    risloc_single_result a{}, b{};
    REQUIRE(risloc_single_run(c.p, 5, &a) == RISLOC_OK);
    REQUIRE(risloc_single_run(c.p, 5, &b) == RISLOC_OK);
    CHECK(a.error_m == b.error_m);
    CHECK(a.K == 12);
    CHECK(a.peb_m > 0.0);
    CHECK(std::hypot(a.p_hat[0] - 3.0, a.p_hat[1] - 3.0, a.p_hat[2] - 30.0) == doctest::Approx(a.error_m));

    double with = 0.0, without = 0.0;
    REQUIRE(risloc_peb(c.p, 0.0, 12, 1.0, 1, &with) == RISLOC_OK);
    REQUIRE(risloc_peb(c.p, 0.0, 12, 1.0, 0, &without) == RISLOC_OK);
    CHECK(with < without);
    REQUIRE(risloc_config_set_ris_enabled(c.p, 0) == RISLOC_OK);
    REQUIRE(risloc_single_run(c.p, 5, &a) == RISLOC_OK);
    CHECK(std::isfinite(a.error_m));
}
