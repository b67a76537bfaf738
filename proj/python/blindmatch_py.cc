/*
 * Copyright 2026 The BlindMatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blindmatch/encrypted_profile.h"
#include "blindmatch/error.h"
#include "blindmatch/field.h"
#include "blindmatch/he.h"
#include "blindmatch/matching.h"
#include "blindmatch/profile.h"
#include "blindmatch/random.h"
#include "blindmatch/session.h"

namespace py = pybind11;
using namespace blindmatch;

namespace {

using PyProfile = std::vector<std::pair<uint64_t, uint64_t>>;

DnaProfile ToProfile(const PyProfile& rows, uint64_t p) {
  FieldParams field(p);
  std::vector<Slot> slots;
  for (auto [eta, sigma] : rows) {
    slots.push_back({FieldElement(eta, field), FieldElement(sigma, field)});
  }
  return DnaProfile(std::move(slots));
}

PyProfile FromProfile(const DnaProfile& d) {
  PyProfile rows;
  for (const Slot& s : d.slots()) {
    rows.emplace_back(s.fragment_size.value(), s.amplitude.value());
  }
  return rows;
}

ProfileDatabase ToDatabase(const std::vector<PyProfile>& rows, uint64_t p) {
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "database must not be empty");
  }
  std::vector<DnaProfile> entries;
  for (const auto& r : rows) entries.push_back(ToProfile(r, p));
  size_t t = entries.front().slot_count();
  return ProfileDatabase(FieldParams(p), t, std::move(entries));
}

// Context plus a key set, seeded for reproducibility.
class PyHe {
 public:
  PyHe(const std::string& backend, uint64_t p, uint64_t seed)
      : ctx_(HeContext::Create(HeParams::ForBackend(ParseHeBackend(backend), p))),
        rng_(RandomSource::FromSeed(seed, "blindmatch/python-he")),
        keys_(ctx_->KeyGen(rng_)) {}

  FieldElement Elem(uint64_t m) const { return FieldElement(m, ctx_->field()); }

  HeCiphertext Encrypt(uint64_t m) {
    return ctx_->Encrypt(Elem(m), keys_.public_key, rng_);
  }
  HeCiphertext EncryptSymmetric(uint64_t m) {
    return ctx_->EncryptSymmetric(Elem(m), keys_.secret_key, rng_);
  }
  uint64_t Decrypt(const HeCiphertext& c) const {
    return ctx_->Decrypt(c, keys_.secret_key).value();
  }
  HeCiphertext Add(const HeCiphertext& a, const HeCiphertext& b) const {
    return ctx_->Add(a, b);
  }
  HeCiphertext Sub(const HeCiphertext& a, const HeCiphertext& b) const {
    return ctx_->Sub(a, b);
  }
  HeCiphertext Mul(const HeCiphertext& a, const HeCiphertext& b) const {
    return ctx_->Mul(a, b, keys_.evaluation_key);
  }
  std::optional<int> NoiseBudget(const HeCiphertext& c) const {
    return ctx_->NoiseBudget(c, keys_.secret_key);
  }
  py::bytes Serialize(const HeCiphertext& c) const {
    Bytes b = ctx_->Serialize(c);
    return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
  }
  HeCiphertext Deserialize(const py::bytes& data) const {
    std::string s = data;
    return ctx_->Deserialize(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(s.data()), s.size()));
  }
  uint64_t EncryptedDistance(const PyProfile& a, const PyProfile& b) {
    const uint64_t p = ctx_->params().plaintext_modulus;
    EncryptedProfile ea = EncryptProfile(*ctx_, ToProfile(a, p), keys_.public_key, rng_);
    EncryptedProfile eb = EncryptProfile(*ctx_, ToProfile(b, p), keys_.public_key, rng_);
    HeCiphertext d = blindmatch::EncryptedDistance(*ctx_, ea, eb, keys_.public_key,
                                                   keys_.evaluation_key, rng_);
    return Decrypt(d);
  }
  std::string backend() const { return HeBackendName(ctx_->params().backend); }

 private:
  std::shared_ptr<const HeContext> ctx_;
  RandomSource rng_;
  HeKeys keys_;
};

py::dict TimingsDict(const PhaseTimings& t) {
  py::dict d;
  d["ot_key_generation"] = t.ot_key_generation;
  d["ot_profile_encryption"] = t.ot_profile_encryption;
  d["ot_extraction"] = t.ot_extraction;
  d["crime_encryption"] = t.crime_encryption;
  d["similarities"] = t.similarities;
  d["find_match"] = t.find_match;
  return d;
}

}  // namespace

PYBIND11_MODULE(_blindmatch, m) {
  m.doc() = "Private DNA profile matching";

  static py::handle error_type =
      py::exception<Error>(m, "BlindmatchError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = ErrorCodeName(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.attr("DEFAULT_MODULUS") = FieldParams::kDefaultModulus;

  m.def("field_add", [](uint64_t a, uint64_t b, uint64_t p) {
    FieldParams f(p);
    return (FieldElement(a, f) + FieldElement(b, f)).value();
  }, py::arg("a"), py::arg("b"), py::arg("p") = FieldParams::kDefaultModulus);
  m.def("field_mul", [](uint64_t a, uint64_t b, uint64_t p) {
    FieldParams f(p);
    return (FieldElement(a, f) * FieldElement(b, f)).value();
  }, py::arg("a"), py::arg("b"), py::arg("p") = FieldParams::kDefaultModulus);
  m.def("field_inv", [](uint64_t a, uint64_t p) {
    return Inv(FieldElement(a, FieldParams(p))).value();
  }, py::arg("a"), py::arg("p") = FieldParams::kDefaultModulus);

  m.def("generate_database",
        [](size_t t, size_t n, uint64_t range_bound, uint64_t p, uint64_t seed) {
          FieldParams field(p);
          RandomSource rng = RandomSource::FromSeed(seed, "blindmatch/gen-db");
          std::vector<PyProfile> out;
          for (size_t i = 0; i < n; ++i) {
            out.push_back(FromProfile(GenerateProfile(field, t, range_bound, rng)));
          }
          return out;
        },
        py::arg("t"), py::arg("n"), py::arg("range_bound") = 8,
        py::arg("p") = FieldParams::kDefaultModulus, py::arg("seed") = 1);
  m.def("perturb",
        [](const PyProfile& d, uint64_t max_delta, uint64_t range_bound,
           uint64_t p, uint64_t seed) {
          RandomSource rng = RandomSource::FromSeed(seed, "blindmatch/gen-crime");
          return FromProfile(Perturb(ToProfile(d, p), max_delta, range_bound, rng));
        },
        py::arg("profile"), py::arg("max_delta") = 1, py::arg("range_bound") = 8,
        py::arg("p") = FieldParams::kDefaultModulus, py::arg("seed") = 1);
  m.def("plaintext_distance",
        [](const PyProfile& a, const PyProfile& b, uint64_t p) {
          return PlaintextDistance(ToProfile(a, p), ToProfile(b, p)).value();
        },
        py::arg("a"), py::arg("b"), py::arg("p") = FieldParams::kDefaultModulus);
  m.def("match_decision",
        [](uint64_t delta, double tau, uint64_t p) {
          return MatchDecision(FieldElement(delta, FieldParams(p)), MatchThreshold(tau));
        },
        py::arg("delta"), py::arg("tau"), py::arg("p") = FieldParams::kDefaultModulus);
  m.def("format_database",
        [](const std::vector<PyProfile>& db, uint64_t p) {
          return FormatDatabase(ToDatabase(db, p));
        },
        py::arg("db"), py::arg("p") = FieldParams::kDefaultModulus);
  m.def("parse_database", [](const std::string& text) {
    ProfileDatabase db = ParseDatabase(text);
    std::vector<PyProfile> out;
    for (const auto& d : db.entries()) out.push_back(FromProfile(d));
    return py::make_tuple(out, db.field().modulus());
  });

  py::class_<HeCiphertext>(m, "Ciphertext")
      .def_property_readonly("depth", &HeCiphertext::depth)
      .def_property_readonly("level", &HeCiphertext::level)
      .def_property_readonly("noise_bits_estimate",
                             &HeCiphertext::noise_bits_estimate);

  py::class_<PyHe>(m, "HeContext")
      .def(py::init<const std::string&, uint64_t, uint64_t>(),
           py::arg("backend") = "transparent",
           py::arg("p") = FieldParams::kDefaultModulus, py::arg("seed") = 1)
      .def_property_readonly("backend", &PyHe::backend)
      .def("encrypt", &PyHe::Encrypt)
      .def("encrypt_symmetric", &PyHe::EncryptSymmetric)
      .def("decrypt", &PyHe::Decrypt)
      .def("add", &PyHe::Add)
      .def("sub", &PyHe::Sub)
      .def("mul", &PyHe::Mul)
      .def("noise_budget", &PyHe::NoiseBudget)
      .def("serialize", &PyHe::Serialize)
      .def("deserialize", &PyHe::Deserialize)
      .def("encrypted_distance", &PyHe::EncryptedDistance,
           "Encrypts both profiles, evaluates the distance circuit and "
           "decrypts the result.");

  m.def("oracle",
        [](const std::vector<PyProfile>& db, const std::vector<uint32_t>& suspects,
           const PyProfile& crime, double tau, uint64_t p) {
          ProfileDatabase pdb = ToDatabase(db, p);
          DnaProfile c = ToProfile(crime, p);
          MatchThreshold threshold(tau);
          py::list out;
          for (uint32_t s : suspects) {
            FieldElement delta = PlaintextDistance(pdb.at(s), c);
            py::dict row;
            row["suspect"] = s;
            row["delta"] = delta.value();
            row["match"] = MatchDecision(delta, threshold);
            out.append(row);
          }
          return out;
        },
        py::arg("db"), py::arg("suspects"), py::arg("crime"), py::arg("tau"),
        py::arg("p") = FieldParams::kDefaultModulus);

  m.def("run_local",
        [](const std::vector<PyProfile>& db, const std::vector<uint32_t>& suspects,
           const PyProfile& crime, double tau, const std::string& backend,
           size_t omega, uint64_t seed, uint64_t p) {
          ProfileDatabase pdb = ToDatabase(db, p);
          ProtocolConfig config;
          config.p = p;
          config.t = pdb.slot_count();
          config.omega = omega;
          config.tau = tau;
          config.backend = ParseHeBackend(backend);
          LocalRun run;
          {
            py::gil_scoped_release release;
            auto lab = LabService::Create(pdb, config.backend, config.group, seed);
            run = RunLocal(*lab, config, suspects, ToProfile(crime, p), seed);
          }
          py::dict out;
          out["matched"] = run.investigator.matched_suspects;
          out["positions"] = run.investigator.positions;
          out["partial"] = run.investigator.partial;
          out["lab_completed"] = run.lab.completed;
          PhaseTimings timings = run.investigator.timings;
          timings += run.lab.timings;
          out["timings_ms"] = TimingsDict(timings);
          return out;
        },
        py::arg("db"), py::arg("suspects"), py::arg("crime"), py::arg("tau"),
        py::arg("backend") = "transparent", py::arg("omega") = 16,
        py::arg("seed") = 1, py::arg("p") = FieldParams::kDefaultModulus);
}
