#include "qfs/scenario.hpp"

#include <sstream>

#include "qfs/errors.hpp"

namespace qfs {

std::string CheckSpec::get(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    throw Error(Errc::BadArgument, "check '" + name + "' is missing parameter '" + key + "'");
  }
  return it->second;
}

std::string CheckSpec::get_or(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace {

// splits a line into tokens, honoring double quotes inside values
std::vector<std::string> tokenize(const std::string& line, size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (quoted) {
      if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (quoted) {
    throw Error(Errc::BadArgument, "unterminated quote on line " + std::to_string(lineno));
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario scenario;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto tokens = tokenize(line, lineno);
    if (tokens.empty()) continue;
    if (tokens[0] == "scenario") {
      if (tokens.size() != 2) {
        throw Error(Errc::BadArgument, "bad scenario header on line " + std::to_string(lineno));
      }
      scenario.name = tokens[1];
      continue;
    }
    if (tokens[0] != "check") {
      throw Error(Errc::BadArgument,
                  "expected 'scenario' or 'check' on line " + std::to_string(lineno));
    }
    CheckSpec spec;
    for (size_t i = 1; i < tokens.size(); ++i) {
      size_t eq = tokens[i].find('=');
      if (eq == std::string::npos) {
        throw Error(Errc::BadArgument, "expected key=value on line " + std::to_string(lineno));
      }
      std::string key = tokens[i].substr(0, eq);
      std::string value = tokens[i].substr(eq + 1);
      if (key == "name") {
        spec.name = value;
      } else if (key == "kind") {
        spec.kind = value;
      } else if (key == "section") {
        spec.section = value;
      } else if (key == "tier") {
        spec.tier = value;
      } else {
        spec.params[key] = value;
      }
    }
    if (spec.name.empty() || spec.kind.empty()) {
      throw Error(Errc::BadArgument,
                  "check needs name= and kind= on line " + std::to_string(lineno));
    }
    if (spec.tier != "default" && spec.tier != "slow") {
      throw Error(Errc::BadArgument, "unknown tier '" + spec.tier + "'");
    }
    for (const auto& other : scenario.checks) {
      if (other.name == spec.name) {
        throw Error(Errc::BadArgument, "duplicate check name '" + spec.name + "'");
      }
    }
    scenario.checks.push_back(std::move(spec));
  }
  if (scenario.name.empty()) throw Error(Errc::BadArgument, "missing 'scenario NAME' header");
  return scenario;
}

const char* builtin_paper_scenario() {
  // keep identical to scenarios/paper.scenario (a unit test enforces this)
  static const char* text = R"SCN(
scenario paper

# Fermat quartics x^4+y^4+z^4+w^4 at p = 3 mod 4: f^(p-2) lands in m^[p]
# and the hypersurface is not F-pure.
check name=fermat-p3-pm2 section=const-f-1 kind=membership p=3 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" power=1 q=3 expect=member
check name=fermat-p7-pm2 section=const-f-1 kind=membership p=7 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" power=5 q=7 expect=member
check name=fermat-p11-pm2 section=const-f-1 kind=membership p=11 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" power=9 q=11 expect=member
check name=fermat-p19-pm2 section=const-f-1 kind=membership p=19 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" power=17 q=19 expect=member
check name=fermat-p23-pm2 section=const-f-1 kind=membership p=23 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" power=21 q=23 expect=member
check name=fermat-p3-fedder section=const-f-1 kind=fedder p=3 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" expect=not-f-pure
check name=fermat-p7-fedder section=const-f-1 kind=fedder p=7 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" expect=not-f-pure
check name=fermat-p11-fedder section=const-f-1 kind=fedder p=11 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" expect=not-f-pure
check name=fermat-p19-fedder section=const-f-1 kind=fedder p=19 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" expect=not-f-pure
check name=fermat-p23-fedder section=const-f-1 kind=fedder p=23 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" expect=not-f-pure

# Schur quartic at p = 5: both f^3 and f^4 land in m^[5].
check name=schur-p5-pm2 section=const-f-5 kind=membership p=5 vars=x,y,z,w poly="x^4+x*y^3+z^4+z*w^3" power=3 q=5 expect=member
check name=schur-p5-pm1 section=const-f-5 kind=membership p=5 vars=x,y,z,w poly="x^4+x*y^3+z^4+z*w^3" power=4 q=5 expect=member

# p = 1 mod 4: scan for lambda in F_p with lambda^4 != 256 making
# x^4+y^4+z^4+w^4+lambda*xyzw satisfy both Frobenius-power memberships.
check name=lambda-p13 section=lambda kind=lambda p=13 expect=found:2
check name=lambda-p17 section=lambda kind=lambda p=17 expect=found:3
check name=lambda-p29 section=lambda kind=lambda p=29 expect=found:1
check name=lambda-p37 section=lambda kind=lambda p=37 expect=found:9
check name=lambda-p41 section=lambda kind=lambda p=41 expect=found:3

# p = 2 quartic x^4+xy^3+yz^3+zw^3: level elements stay in m^[2^r] for
# r = 1..9. Combinatorial verdicts are coefficient-free and sound; the poly
# backend recomputes r = 1..6 exactly by default and r = 7..9 in the slow
# tier.
check name=k3-level-r1-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=1 backend=combinatorial expect=member
check name=k3-level-r2-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=2 backend=combinatorial expect=member
check name=k3-level-r3-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=3 backend=combinatorial expect=member
check name=k3-level-r4-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=4 backend=combinatorial expect=member
check name=k3-level-r5-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=5 backend=combinatorial expect=member
check name=k3-level-r6-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=6 backend=combinatorial expect=member
check name=k3-level-r7-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=7 backend=combinatorial expect=member
check name=k3-level-r8-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=8 backend=combinatorial expect=member
check name=k3-level-r9-comb section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=9 backend=combinatorial expect=member
check name=k3-level-r1-poly section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=1 backend=poly expect=member
check name=k3-level-r2-poly section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=2 backend=poly expect=member
check name=k3-level-r3-poly section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=3 backend=poly expect=member
check name=k3-level-r4-poly section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=4 backend=poly expect=member
check name=k3-level-r5-poly section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=5 backend=poly expect=member
check name=k3-level-r6-poly section=const-f-2 kind=level p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=6 backend=poly expect=member
check name=k3-level-r7-poly section=const-f-2 kind=level tier=slow p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=7 backend=poly expect=member
check name=k3-level-r8-poly section=const-f-2 kind=level tier=slow p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=8 backend=poly expect=member
check name=k3-level-r9-poly section=const-f-2 kind=level tier=slow p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" r=9 backend=poly expect=member
check name=k3-height section=const-f-2 kind=height p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" cap=9 backend=combinatorial-prescreen expect=at-least:10

# gamma infeasibility sweeps behind the level memberships, plus the
# positive control just outside their scope.
check name=claim-26mod27 section=claims kind=claims-sweep p=2 vars=x,y,z,w f="x^4+x*y^3+y*z^3+z*w^3" q-min=2 q-max=2000 s-rule=q-2 mod=27 residue=26 residue-op=eq expect=no-contradictions
check name=claim-not1mod27 section=claims kind=claims-sweep p=2 vars=x,y,z,w f="x^4+x*y^3+y*z^3+z*w^3" q-min=2 q-max=1500 s-rule=q-1 mod=27 residue=1 residue-op=ne expect=no-contradictions
check name=claim-positive-control section=claims kind=gamma p=2 vars=x,y,z,w f="x^4+x*y^3+y*z^3+z*w^3" q=28 s=27 expect=witness:5,7,6,9

# the residue sequence that drives both sweeps
check name=residues-2-mod-27 section=residues kind=powers-mod base=2 modulus=27 k=9 expect=2,4,8,16,5,10,20,13,26

# theta-chain certificates for every m = 1..511 with the multiplier
# a = x^2*y*z^2*w^3*t^(1023-2m): ten steps end outside m^[2].
check name=chains-m1-511 section=chains kind=chain-family p=2 vars=x,y,z,w,t f="x^4+x*y^3+y*z^3+z*w^3" m=1..511 n=10 a-exps=2,1,2,3 a-t-base=1023 a-t-slope=-2 expect=certified-all

# m = 512: the deformation argument concludes non-quasi-F-splitting, and the
# direct height search on f + t^512 finds no non-member level up to 9.
check name=extension-m512 section=extension kind=extension p=2 vars=x,y,z,w f="x^4+x*y^3+y*z^3+z*w^3" n=9 l=512 expect=concluded
check name=height-f-t512 section=extension kind=height p=2 vars=x,y,z,w,t poly="x^4+x*y^3+y*z^3+z*w^3+t^512" cap=9 backend=combinatorial-prescreen expect=at-least:10

# smoothness evidence: no singular points over the scanned fields
check name=scan-k3-p2 section=smoothness kind=singular-scan p=2 vars=x,y,z,w poly="x^4+x*y^3+y*z^3+z*w^3" emax=3 expect=empty
check name=scan-schur-p5 section=smoothness kind=singular-scan p=5 vars=x,y,z,w poly="x^4+x*y^3+z^4+z*w^3" emax=2 expect=empty
check name=scan-fermat-p3 section=smoothness kind=singular-scan p=3 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" emax=1 expect=empty
check name=scan-fermat-p7 section=smoothness kind=singular-scan p=7 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" emax=1 expect=empty
check name=scan-fermat-p11 section=smoothness kind=singular-scan p=11 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" emax=1 expect=empty
check name=scan-fermat-p19 section=smoothness kind=singular-scan p=19 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" emax=1 expect=empty
check name=scan-fermat-p23 section=smoothness kind=singular-scan p=23 vars=x,y,z,w poly="x^4+y^4+z^4+w^4" emax=1 expect=empty
)SCN";
  return text;
}

}  // namespace qfs
