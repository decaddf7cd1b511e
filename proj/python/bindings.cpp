#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qcorr/correlations.hpp"
#include "qcorr/io.hpp"
#include "qcorr/report.hpp"
#include "qcorr/witness.hpp"
#include "qcorr/zoo.hpp"

namespace py = pybind11;
using namespace qcorr;

namespace {

py::dict discord_dict(const DiscordResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["raw_value"] = r.raw_value;
  d["per_start_values"] = r.per_start_values;
  d["converged"] = r.converged;
  d["evaluations"] = r.evaluations;
  if (r.argmin) {
    d["basis_gamma"] = r.argmin->basis_gamma().vectors();
    d["basis_gamma_prime"] = r.argmin->basis_gamma_prime().vectors();
  }
  if (r.argmin_basis) d["basis"] = r.argmin_basis->vectors();
  return d;
}

py::list partition_values(const std::vector<PartitionValue>& values) {
  py::list out;
  for (const auto& pv : values) out.append(py::make_tuple(pv.cut.to_string(), pv.value));
  return out;
}

Side side_from(const std::string& s) {
  if (s == "gamma") return Side::Gamma;
  if (s == "gamma_prime") return Side::GammaPrime;
  throw Error(ErrorCode::BadParams, "measured side must be 'gamma' or 'gamma_prime', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_qcorr, m) {
  m.doc() = "Multipartite quantum correlation measures";

  // QcorrError(ValueError) carrying .code (the ErrorCode name) and .magnitude.
  static py::handle error_type = py::exception<Error>(m, "QcorrError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(py::str(e.what()));
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("magnitude") = e.magnitude();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](const Matrix& matrix, const Dims& dims, const std::string& label) {
             return DensityMatrix::validate(matrix, dims, label);
           }),
           py::arg("matrix"), py::arg("dims"), py::arg("label") = "")
      .def_static("from_vector",
                  [](const Vector& v, const Dims& dims) { return PureStateVector::validate(v, dims).projector(); })
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("dims", &DensityMatrix::dims)
      .def_property_readonly("label", &DensityMatrix::label)
      .def_property_readonly("clipped", &DensityMatrix::clipped)
      .def("eigenvalues", &DensityMatrix::eigenvalues)
      .def("purity", &DensityMatrix::purity)
      .def("__repr__", [](const DensityMatrix& r) {
        std::string dims;
        for (int d : r.dims()) dims += (dims.empty() ? "" : "x") + std::to_string(d);
        return "<DensityMatrix " + dims + (r.label().empty() ? "" : " '" + r.label() + "'") + ">";
      });

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("n_random_starts", &OptimizerConfig::n_random_starts)
      .def_readwrite("include_canonical_starts", &OptimizerConfig::include_canonical_starts)
      .def_readwrite("max_iterations", &OptimizerConfig::max_iterations)
      .def_readwrite("ftol", &OptimizerConfig::ftol)
      .def_readwrite("step", &OptimizerConfig::step)
      .def_readwrite("seed", &OptimizerConfig::seed)
      .def_readwrite("threads", &OptimizerConfig::threads)
      .def_property(
          "per_site", [](const OptimizerConfig& c) { return c.mode == BasisMode::PerSite; },
          [](OptimizerConfig& c, bool v) { c.mode = v ? BasisMode::PerSite : BasisMode::PerCut; })
      .def_property(
          "gamma_only", [](const OptimizerConfig& c) { return c.sides == MeasurementSides::GammaOnly; },
          [](OptimizerConfig& c, bool v) { c.sides = v ? MeasurementSides::GammaOnly : MeasurementSides::Both; });

  m.def("zoo", [](const std::string& name, std::optional<int> n, std::optional<double> p, std::optional<Dims> dims,
                  std::optional<int> rank, std::uint64_t seed) {
    return to_density(zoo(name, ZooParams{n, p, dims, rank, seed}));
  }, py::arg("name"), py::kw_only(), py::arg("n") = py::none(), py::arg("p") = py::none(),
        py::arg("dims") = py::none(), py::arg("rank") = py::none(), py::arg("seed") = 42);
  m.def("zoo_names", &zoo_names);
  m.def("random_pure", [](const Dims& dims, std::uint64_t seed) { return random_pure(dims, seed).amplitudes(); },
        py::arg("dims"), py::arg("seed"));
  m.def("random_mixed", &random_mixed, py::arg("dims"), py::arg("rank"), py::arg("seed"));
  m.def("read_state", &parse_state, py::arg("path"));
  m.def("write_state", &serialize, py::arg("rho"), py::arg("path"));

  m.def("tensor", &tensor);
  m.def("partial_trace", [](const DensityMatrix& rho, const Subset& keep) { return partial_trace(rho, keep); },
        py::arg("rho"), py::arg("keep"));
  m.def("entropy", py::overload_cast<const DensityMatrix&>(&von_neumann_entropy));
  m.def("relative_entropy", py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&relative_entropy));
  m.def("mutual_information",
        [](const DensityMatrix& rho, const std::string& cut) {
          return mutual_information(rho, Partition::parse(cut, rho.dims()));
        },
        py::arg("rho"), py::arg("cut"));
  m.def("bipartitions", [](const Dims& dims) {
    std::vector<std::string> out;
    for (const auto& p : enumerate_bipartitions(dims)) out.push_back(p.to_string());
    return out;
  });

  m.def("d2_distance", py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&d2_distance));
  m.def("dp_distance", py::overload_cast<const DensityMatrix&, const DensityMatrix&, double>(&dp_distance));
  m.def("witness", [](const DensityMatrix& rho) {
    const auto w = witness_W(rho);
    py::dict d;
    d["value"] = w.value;
    d["best_partition"] = w.best_partition().to_string();
    d["per_partition"] = partition_values(w.per_partition);
    d["gme_concurrence"] = w.gme_concurrence ? py::cast(*w.gme_concurrence) : py::none();
    return d;
  });
  m.def("concurrence", [](const Vector& v, const Dims& dims) {
    return concurrence_pure(PureStateVector::validate(v, dims));
  }, py::arg("psi"), py::arg("dims"));
  m.def("gme_concurrence", [](const Vector& v, const Dims& dims) {
    return gme_concurrence_pure(PureStateVector::validate(v, dims));
  }, py::arg("psi"), py::arg("dims"));
  m.def("gme_concurrence_upper",
        [](const DensityMatrix& rho, const OptimizerConfig& cfg) { return gme_concurrence_upper(rho, cfg).value; },
        py::arg("rho"), py::arg("config") = OptimizerConfig{});
  m.def("gmc_check", [](const DensityMatrix& rho) {
    const auto r = gmc_commutator_check(rho);
    py::dict d;
    d["min_norm"] = r.min_norm;
    d["best_partition"] = r.best_partition().to_string();
    d["norms"] = partition_values(r.commutator_norms);
    d["verdict"] = r.verdict;
    d["caveat"] = r.caveat;
    return d;
  });

  const auto cfg_default = OptimizerConfig{};
  m.def("original_discord",
        [](const DensityMatrix& rho, const std::string& measured, const OptimizerConfig& cfg) {
          return discord_dict(original_discord(rho, side_from(measured), cfg));
        },
        py::arg("rho"), py::arg("measured") = "gamma_prime", py::arg("config") = cfg_default);
  m.def("symmetric_discord",
        [](const DensityMatrix& rho, const OptimizerConfig& cfg) { return discord_dict(symmetric_discord(rho, cfg)); },
        py::arg("rho"), py::arg("config") = cfg_default);
  m.def("gamma_discord",
        [](const DensityMatrix& rho, const std::string& cut, const OptimizerConfig& cfg) {
          return discord_dict(gamma_discord(rho, Partition::parse(cut, rho.dims()), cfg));
        },
        py::arg("rho"), py::arg("cut"), py::arg("config") = cfg_default);
  m.def("genuine_discord",
        [](const DensityMatrix& rho, const OptimizerConfig& cfg) {
          const auto g = genuine_discord(rho, cfg);
          py::dict d;
          d["value"] = g.value;
          d["best_partition"] = g.best_partition().to_string();
          py::dict per;
          for (const auto& p : g.per_partition) per[py::str(p.cut.to_string())] = discord_dict(p.result);
          d["per_partition"] = per;
          return d;
        },
        py::arg("rho"), py::arg("config") = cfg_default);

  m.def("analyze_json",
        [](const DensityMatrix& rho, const std::vector<std::string>& measures, const OptimizerConfig& cfg) {
          AnalysisRequest req;
          req.entropy = req.witness = req.gmc = false;
          for (const auto& name : measures) {
            if (name == "entropy") req.entropy = true;
            else if (name == "witness") req.witness = true;
            else if (name == "gmc") req.gmc = true;
            else if (name == "discord") req.discord = true;
            else if (name == "concurrence") req.concurrence = true;
            else throw Error(ErrorCode::BadParams, "unknown measure '" + name + "'");
          }
          req.config = cfg;
          req.timing = false;
          return report_to_json(analyze(rho, req)).dump(2);
        },
        py::arg("rho"), py::arg("measures") = std::vector<std::string>{"witness", "gmc", "entropy"},
        py::arg("config") = cfg_default);
}
