"""Analytical throughput of dynamic channel bonding WLANs via continuous-time Markov networks."""
from .channels import (Allocation, Channel, ChannelizationScheme, ConfigurationError,
                       candidate_tx_channels, enumerate_valid_channels)
from .ctmn import Ctmn, StateSpaceError, explore, gillespie_sample
from .deployment import DeploymentError, DeploymentSpec, generate_deployment
from .metrics import (ReducibleChainError, ScenarioReport, WlanReport, fairness,
                      occupancy_stderr, solve_equilibrium, throughput)
from .network import Wlan, profile_link
from .phy import DEFAULT_MCS_TABLE, PhyParams, load_mcs_table
from .policies import ChannelChoice, Policy, select
from .propagation import RadioConfig, path_loss_db, sensed_free_set, sinr_db
from .runner import (CSV_COLUMNS, SweepSpec, compare_policies, evaluate,
                     parse_sweep_spec, policy_combinations, run, sweep, write_csv)
from .scenario import (ScenarioConfig, ScenarioError, SolverOptions, emit_scenario,
                       load_fixture, parse_scenario)

__version__ = "0.1.0"
