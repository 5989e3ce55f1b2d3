#include "qha/augmentation.hpp"
#include "qha/datasets.hpp"
#include "qha/experiments.hpp"
#include "qha/metrics.hpp"
#include "qha/operators.hpp"
#include "qha/tf.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;

namespace {

using CArray = Eigen::Matrix<qha::Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Data sets cross the boundary as (N, d) complex arrays, one signal per row.
CArray to_array(const qha::DataSet& data) {
  CArray out(static_cast<Eigen::Index>(data.size()), data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = data.signals()[i].values().transpose();
  return out;
}

qha::DataSet from_array(const CArray& signals, bool normalize) {
  std::vector<qha::Signal> list;
  for (Eigen::Index i = 0; i < signals.rows(); ++i) list.emplace_back(qha::CVector(signals.row(i).transpose()));
  qha::DataSet data(std::move(list), 0, "python");
  return normalize ? qha::normalize_dataset(data) : data;
}

qha::HermitianOperator as_operator(const qha::CMatrix& s) { return qha::HermitianOperator(s, 1e-8); }

qha::GridFunction as_grid(const qha::RMatrix& values) { return qha::GridFunction(qha::PhaseGrid(static_cast<int>(values.rows())), values); }

qha::Domain rect(int d, double width, double height, double center_t, double center_f) {
  return qha::make_rect_domain(qha::PhaseGrid(d), width, height, center_t, center_f);
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum harmonic analysis of time-series data sets";

  m.def("gaussian_window", [](int d) { return qha::gaussian_window(d).values(); }, py::arg("d"));
  m.def(
      "hermite_basis",
      [](int d, int count) {
        CArray out(count, d);
        const auto h = qha::hermite_basis(d, count);
        for (int i = 0; i < count; ++i) out.row(i) = h[static_cast<std::size_t>(i)].values().transpose();
        return out;
      },
      py::arg("d"), py::arg("count"));

  m.def("gen_chirps", [](int n, int d, std::uint64_t seed) { return to_array(qha::gen_chirps(n, d, seed)); },
        py::arg("n"), py::arg("d") = 280, py::arg("seed") = 1);
  m.def(
      "gen_local_components",
      [](int n, int d, std::uint64_t seed, double noise_energy, double spread) {
        qha::LocalComponentParams p;
        p.noise_energy = noise_energy;
        p.spread = spread;
        return to_array(qha::gen_local_components(n, d, seed, p).data);
      },
      py::arg("n"), py::arg("d"), py::arg("seed") = 1, py::arg("noise_energy") = 0.0, py::arg("spread") = 0.5);
  m.def("gen_random_tf_weighted",
        [](int n, int d, std::uint64_t seed) { return to_array(qha::gen_random_tf_weighted(n, d, seed)); },
        py::arg("n"), py::arg("d"), py::arg("seed") = 1);
  m.def("gen_gaussian_combos",
        [](int n, int d, std::uint64_t seed) { return to_array(qha::gen_gaussian_combos(n, d, seed)); },
        py::arg("n"), py::arg("d"), py::arg("seed") = 1);

  m.def(
      "data_operator", [](const CArray& signals, bool normalize) { return qha::data_operator(from_array(signals, normalize)).matrix(); },
      py::arg("signals"), py::arg("normalize") = true);
  m.def("von_neumann_entropy", [](const qha::CMatrix& s) { return qha::von_neumann_entropy(as_operator(s)); }, py::arg("s"));
  m.def("eigenvalues", [](const qha::CMatrix& s) { return qha::hermitian_eigenvalues(s); }, py::arg("s"));
  m.def("spectrogram", [](const qha::CVector& f, const qha::CVector& g) {
    return qha::spectrogram(qha::Signal(f), qha::Signal(g)).values();
  }, py::arg("f"), py::arg("g"));
  m.def("total_correlation", [](const qha::CMatrix& s) { return qha::total_correlation(as_operator(s)).values(); },
        py::arg("s"));
  m.def("cohen_class", [](const qha::CMatrix& s, const qha::CVector& f) {
    return qha::cohen_class(as_operator(s), qha::Signal(f)).values();
  }, py::arg("s"), py::arg("f"));
  m.def("differential_entropy", [](const qha::RMatrix& f) { return qha::differential_entropy(as_grid(f)); }, py::arg("f"));

  m.def(
      "mixed_state_localization",
      [](const qha::CMatrix& s, double width, double height, double center_t, double center_f) {
        return qha::mixed_state_localization(rect(static_cast<int>(s.rows()), width, height, center_t, center_f),
                                             as_operator(s))
            .matrix();
      },
      py::arg("s"), py::arg("width"), py::arg("height"), py::arg("center_t") = 0.0, py::arg("center_f") = 0.0);
  m.def(
      "rect_measure",
      [](int d, double width, double height) { return rect(d, width, height, 0.0, 0.0).measure(); },
      py::arg("d"), py::arg("width"), py::arg("height"));
  m.def(
      "alc",
      [](const qha::RMatrix& stilde, double width, double height, double center_t, double center_f) {
        return qha::alc(as_grid(stilde), rect(static_cast<int>(stilde.rows()), width, height, center_t, center_f));
      },
      py::arg("stilde"), py::arg("width"), py::arg("height"), py::arg("center_t") = 0.0, py::arg("center_f") = 0.0);
  m.def(
      "entropy_bounds",
      [](const qha::CMatrix& s, double width, double height, double center_t, double center_f) {
        const auto r = qha::berezin_lieb_check(as_operator(s), rect(static_cast<int>(s.rows()), width, height, center_t, center_f));
        py::dict out;
        out["lower"] = r.lower;
        out["mid"] = r.mid;
        out["upper"] = r.upper;
        out["tolerance"] = r.tolerance;
        out["pass"] = r.pass;
        return out;
      },
      py::arg("s"), py::arg("width"), py::arg("height"), py::arg("center_t") = 0.0, py::arg("center_f") = 0.0);

  m.def("experiment_names", &qha::experiment_names);
  m.def(
      "run_experiment",
      [](const std::string& name, int d, int n, int trials, std::uint64_t seed, py::dict params) {
        qha::ExperimentConfig c;
        c.experiment = name;
        c.d = d;
        c.n = n;
        c.trials = trials;
        c.seed = seed;
        c.params = nlohmann::json::parse(py::str(py::module_::import("json").attr("dumps")(params)).cast<std::string>());
        qha::ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = qha::run_experiment(c);
        }
        py::dict out;
        out["columns"] = r.table.columns;
        out["rows"] = r.table.rows;
        out["csv"] = r.table.to_csv();
        out["report"] = to_python(r.report);
        return out;
      },
      py::arg("name"), py::arg("d") = 0, py::arg("n") = 0, py::arg("trials") = 0, py::arg("seed") = 1,
      py::arg("params") = py::dict());
}
