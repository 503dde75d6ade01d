#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"

#include "fastml/bench/report.hpp"
#include "fastml/gradient_classifiers.hpp"
#include "fastml/linear_models.hpp"

using namespace fastml;
using namespace fastml::bench;

namespace {

std::filesystem::path scratch_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "fastml_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

BenchReport sample_report(const std::string& dataset, const std::string& model, double time_ms) {
  BenchReport r;
  r.dataset = dataset;
  r.model = model;
  r.config = {{"learning_rate", 0.01}, {"max_epochs", 1000}, {"batch_size", "full"}};
  r.timings_ms = {time_ms * 1.1, time_ms, time_ms * 0.9};
  r.training_time_ms = time_ms;
  r.metrics = {{"accuracy", 0.1 + 0.2}, {"f1", 2.0 / 3.0}, {"tp", 17.0}};
  r.epochs_run = 12;
  r.complexity = 7000;
  r.seed = 18446744073709551615ULL;
  return r;
}

BenchReport run_one(const std::string& dataset, const std::string& model, std::uint64_t seed,
                    BenchConfig config = {}) {
  DatasetSpec spec = parse_dataset_spec(dataset, seed);
  const Dataset data = load_dataset(spec);
  return run_benchmark(spec, data, parse_model(model), config);
}

}  // namespace

TEST_SUITE("golden") {
  TEST_CASE("csv: three rows with a trailing target column") {
    const auto path = scratch_file("three_rows.csv");
    write_text(path, "a,b,target\n1,2,3\n4,5,6\n7,8,9\n");
    const Dataset d = load_csv(path.string());
    CHECK(d.x == Matrix{{1, 2}, {4, 5}, {7, 8}});
    CHECK(d.y == Vector{3, 6, 9});
    CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
    CHECK(d.target_name == "target");
  }

  TEST_CASE("csv: non-numeric cell reports its data row and column") {
    const auto path = scratch_file("bad_cell.csv");
    write_text(path, "a,b,target\n1,2,3\n4,abc,6\n");
    try {
      load_csv(path.string());
      FAIL("expected a cell error");
    } catch (const CellError& e) {
      CHECK(e.code() == Errc::NonNumericCell);
      CHECK(e.row() == 2);
      CHECK(e.col() == 2);
    }
  }

  TEST_CASE("csv: write then reload is bit-identical") {
    std::mt19937_64 gen(61);
    Dataset d;
    d.x = testing::random_matrix(gen, 25, 4, -1e6, 1e6);
    d.x(0, 0) = 1e-300;
    d.x(1, 1) = -0.0;
    d.x(2, 2) = 0.1 + 0.2;
    d.y = testing::random_vector(gen, 25);
    d.feature_names = {"p", "q", "r", "s"};
    d.target_name = "y";
    const auto path = scratch_file("round_trip.csv");
    write_csv(path.string(), d);
    const Dataset back = load_csv(path.string());
    CHECK(back.x == d.x);
    CHECK(back.y == d.y);
    CHECK(std::signbit(back.x(1, 1)));
    CHECK(back.feature_names == d.feature_names);
  }

  TEST_CASE("synthetic: noiseless regression recovers the coefficients") {
    DatasetSpec spec = parse_dataset_spec("synthetic:200x6:regression:0", 3);
    const Dataset d = load_dataset(spec);
    REQUIRE(d.true_coefficients);
    const auto fit = fit_multiple(d.x, d.y);
    CHECK(testing::max_abs_diff(fit.coefficients, *d.true_coefficients) <= 1e-8);
  }

  TEST_CASE("synthetic: separation 10 is learned by logistic and svm") {
    DatasetSpec spec = parse_dataset_spec("synthetic:2000x5:classification:10", 4);
    const Dataset d = load_dataset(spec);
    Rng r1(5);
    const auto logit = logistic_fit(d.x, d.y, OptimizerConfig{}, r1);
    const Vector lp = logistic_predict(logit, d.x);
    Vector ypm(d.y.size());
    for (std::size_t i = 0; i < ypm.size(); ++i) ypm[i] = d.y[i] == 1.0 ? 1.0 : -1.0;
    SvmConfig cfg;
    cfg.early_stop_accuracy = 0.99;
    Rng r2(6);
    const Vector sp = svm_predict(svm_fit(d.x, ypm, cfg, r2), d.x);
    std::size_t lh = 0, sh = 0;
    for (std::size_t i = 0; i < ypm.size(); ++i) {
      lh += lp[i] == d.y[i];
      sh += sp[i] == ypm[i];
    }
    CHECK(static_cast<double>(lh) / 2000.0 >= 0.99);
    CHECK(static_cast<double>(sh) / 2000.0 >= 0.99);
  }

  TEST_CASE("synthetic: same seed twice gives identical data") {
    for (const char* text : {"synthetic:50x3:regression", "synthetic:50x3:classification"}) {
      DatasetSpec a = parse_dataset_spec(text, 9);
      DatasetSpec b = parse_dataset_spec(text, 9);
      const Dataset da = load_dataset(a);
      const Dataset db = load_dataset(b);
      CHECK(da.x == db.x);
      CHECK(da.y == db.y);
    }
  }

  TEST_CASE("run: MLR on a 1000x7 synthetic set") {
    const auto r = run_one("synthetic:1000x7:regression", "mlr", 42);
    REQUIRE_FALSE(r.error);
    REQUIRE(r.training_time_ms);
    CHECK(std::isfinite(*r.training_time_ms));
    CHECK(*r.training_time_ms > 0.0);
    CHECK(r.metrics.count("r2") == 1);
    CHECK(r.complexity == 7000);
  }

  TEST_CASE("run: SVM early stop on a separable 100000x15 set finishes in one epoch") {
    const auto r = run_one("synthetic:100000x15:classification:10", "svm", 42);
    REQUIRE_FALSE(r.error);
    REQUIRE(r.epochs_run);
    CHECK(*r.epochs_run == 1);
  }

  TEST_CASE("run: five repeats echo five timings and their median") {
    BenchConfig cfg;
    cfg.repeats = 5;
    const auto r = run_one("synthetic:300x4:regression", "mlr", 1, cfg);
    REQUIRE(r.timings_ms.size() == 5);
    CHECK(*r.training_time_ms == median(r.timings_ms));
    CHECK(r.config["repeats"] == 5);
  }

  TEST_CASE("report: one report renders as JSON the reader accepts") {
    const std::vector<BenchReport> reports = {sample_report("d", "mlr", 1.5)};
    const auto path = scratch_file("one.json");
    emit_report(reports, ReportFormat::Json, path.string());
    const auto j = nlohmann::json::parse(std::ifstream(path));
    REQUIRE(j.is_array());
    for (const char* key : {"dataset", "model", "config", "timings_ms", "training_time_ms", "metrics",
                            "epochs_run", "complexity", "seed"}) {
      CHECK(j[0].contains(key));
    }
    CHECK(read_reports(path.string()) == reports);
  }

  TEST_CASE("report: two reports render as a CSV header plus two rows") {
    const std::vector<BenchReport> reports = {sample_report("d", "mlr", 1.5), sample_report("d", "svm", 3)};
    const std::string csv = render_csv(reports);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.rfind("dataset,model,", 0) == 0);
  }

  TEST_CASE("report: json -> csv -> json keeps every number exactly") {
    std::vector<BenchReport> reports = {sample_report("synthetic:1x1:regression", "mlr", 0.123456789012345),
                                        sample_report("file, with \"quotes\".csv", "knn:5", 1e-7)};
    reports[1].epochs_run.reset();
    reports[1].error = "SingularMatrix: pivot 2 below tolerance";
    reports[1].training_time_ms.reset();
    reports[1].metrics["r2"] = -1.2345678901234567e-5;
    const auto from_json = parse_json_reports(render_json(reports));
    const auto through_csv = parse_csv_reports(render_csv(from_json));
    CHECK(through_csv == reports);
    CHECK(parse_json_reports(render_json(through_csv)) == reports);
  }
}

TEST_SUITE("properties") {
  TEST_CASE("reports are reproducible apart from timings") {
    for (const char* model : {"mlr", "poly:2", "kmeans:3", "pca"}) {
      auto a = run_one("synthetic:400x5:regression", model, 7);
      auto b = run_one("synthetic:400x5:regression", model, 7);
      CHECK(a.metrics == b.metrics);
      CHECK(a.epochs_run == b.epochs_run);
    }
    for (const char* model : {"logistic", "svm", "knn:3", "nb"}) {
      BenchConfig cfg;
      cfg.logistic.max_epochs = 50;
      auto a = run_one("synthetic:400x5:classification", model, 7, cfg);
      auto b = run_one("synthetic:400x5:classification", model, 7, cfg);
      CHECK(a.metrics == b.metrics);
      CHECK(a.epochs_run == b.epochs_run);
    }
  }

  TEST_CASE("complexity equals rows times feature columns") {
    CHECK(run_one("synthetic:123x4:regression", "mlr", 1).complexity == 492);
    const auto path = scratch_file("complexity.csv");
    write_text(path, "a,b,c,y\n1,2,3,4\n2,3,5,7\n3,5,8,12\n4,1,1,1\n5,9,2,3\n6,3,3,2\n7,1,0,1\n8,2,2,2\n9,3,7,1\n10,1,1,5\n");
    CHECK(run_one(path.string(), "mlr", 1).complexity == 30);
  }

  TEST_CASE("no-op model times below one millisecond") {
    const auto r = run_one("synthetic:100x3:regression", "noop", 1);
    REQUIRE(r.training_time_ms);
    CHECK(*r.training_time_ms < 1.0);
  }

  TEST_CASE("model errors are recorded, not thrown") {
    const auto r = run_one("synthetic:100x3:classification", "mlr", 1);
    REQUIRE(r.error);
    CHECK(r.error->find("UnsupportedTask") != std::string::npos);
    CHECK_FALSE(r.training_time_ms);
    BenchConfig cfg;
    cfg.repeats = 2;
    CHECK(run_one("synthetic:100x3:regression", "mlr", 1, cfg).error);
    CHECK(run_one("synthetic:100x3:regression", "kmeans:500", 1).error);
  }

  TEST_CASE("compare: identical reports give zero deltas and unit ratios") {
    const std::vector<BenchReport> a = {sample_report("d", "mlr", 2), sample_report("e", "svm", 5)};
    const auto cmp = compare_reports(a, a);
    CHECK(cmp.pass);
    for (const auto& row : cmp.rows) {
      CHECK(row.speed_ratio == 1.0);
      for (const auto& [k, v] : row.deltas) CHECK(v == 0.0);
    }
  }

  TEST_CASE("compare: twice as fast gives ratio 2 and inverts symmetrically") {
    const std::vector<BenchReport> a = {sample_report("d", "mlr", 1.5)};
    const std::vector<BenchReport> b = {sample_report("d", "mlr", 3.0)};
    CHECK(compare_reports(a, b).rows[0].speed_ratio == 2.0);
    std::mt19937_64 gen(62);
    std::uniform_real_distribution<double> t(0.01, 100.0);
    for (int i = 0; i < 100; ++i) {
      const std::vector<BenchReport> x = {sample_report("d", "m", t(gen))};
      const std::vector<BenchReport> y = {sample_report("d", "m", t(gen))};
      const double forward = *compare_reports(x, y).rows[0].speed_ratio;
      const double backward = *compare_reports(y, x).rows[0].speed_ratio;
      CHECK(forward * backward == doctest::Approx(1.0).epsilon(1e-15));
    }
  }

  TEST_CASE("compare: metric drift beyond tolerance fails the comparison") {
    const std::vector<BenchReport> a = {sample_report("d", "mlr", 1)};
    std::vector<BenchReport> b = a;
    b[0].metrics["f1"] += 1e-3;
    const auto cmp = compare_reports(a, b);
    CHECK_FALSE(cmp.pass);
    CHECK(cmp.rows[0].deltas.at("f1") == doctest::Approx(1e-3));
    CHECK(compare_reports(a, b, {1e-2, 0.0}).pass);
  }

  TEST_CASE("compare: a missing row is a key mismatch naming it") {
    const std::vector<BenchReport> a = {sample_report("d", "mlr", 1), sample_report("d", "svm", 1)};
    const std::vector<BenchReport> b = {sample_report("d", "mlr", 1)};
    try {
      compare_reports(a, b);
      FAIL("expected KeyMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::KeyMismatch);
      CHECK(std::string(e.what()).find("d / svm") != std::string::npos);
    }
    CHECK_ERRC(compare_reports(b, a), Errc::KeyMismatch);
  }

  TEST_CASE("table output lists training time and scales accuracy") {
    const std::vector<BenchReport> reports = {sample_report("d", "logistic", 2.5)};
    const std::string table = render_table(reports);
    CHECK(table.find("Training Time (ms)") != std::string::npos);
    CHECK(table.find("2.500 ms") != std::string::npos);
    CHECK(table.find("30.00") != std::string::npos);
  }
}

TEST_CASE("dataset and spec error paths") {
  CHECK_ERRC(load_csv(scratch_file("does_not_exist.csv").string()), Errc::FileNotFound);
  const auto path = scratch_file("targets.csv");
  write_text(path, "a,b\n1,2\n3,4\n");
  CHECK_ERRC(load_csv(path.string(), "c"), Errc::MissingTargetColumn);
  CHECK(load_csv(path.string(), "a").y == Vector{1, 3});
  write_text(path, "a,b\n1,2\n3\n");
  CHECK_ERRC(load_csv(path.string()), Errc::ShapeMismatch);
  CHECK_ERRC(parse_dataset_spec("synthetic:10x:regression", 0), Errc::SpecInvalid);
  CHECK_ERRC(parse_dataset_spec("synthetic:10x2:clustering", 0), Errc::SpecInvalid);
  DatasetSpec tiny = parse_dataset_spec("synthetic:5x2:regression", 0);
  CHECK_ERRC(load_dataset(tiny), Errc::SpecInvalid);
  CHECK_ERRC(parse_model("forest"), Errc::SpecInvalid);
  CHECK_ERRC(parse_model("knn"), Errc::SpecInvalid);
  CHECK_ERRC(parse_model("mlr:2"), Errc::SpecInvalid);
  CHECK_ERRC(parse_json_reports("{}"), Errc::IoError);
  CHECK_ERRC(parse_json_reports("[{\"dataset\": 1}]"), Errc::IoError);
  CHECK_ERRC(parse_csv_reports("dataset,model\nx,y\n"), Errc::IoError);
  CHECK_ERRC(emit_report(std::vector<BenchReport>{}, ReportFormat::Json, "-"), Errc::EmptyInput);
  CHECK(parse_model("poly:3").name() == "poly:3");
}
