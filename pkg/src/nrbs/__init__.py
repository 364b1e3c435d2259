"""Natural resource balance sheets: compile, validate, compare and assign liabilities."""

__version__ = "0.1.0"

from .changes import (
    ChangeRecord,
    ChangeReport,
    SheetChangeSummary,
    constant_price_change,
    current_price_change,
    item_change_report,
    sheet_change,
)
from .compiler import (
    Discrepancy,
    category_subtotal,
    check_totals,
    compare_values,
    compile_sheet,
    validate_consistency,
)
from .errors import *  # noqa: F401,F403
from .model import (
    BalanceSheet,
    Category,
    LineItem,
    Money,
    Side,
    Totals,
    UnitPrice,
    ValuationMethod,
    money_add,
    money_sum,
)
from .render import render
from .responsibility import (
    MEE,
    MNR,
    Actor,
    ActorKind,
    LiabilityRecord,
    RightKind,
    RightsMatrix,
    assign_creditor,
    build_records,
    rights_report,
)
from .tables import default_regime, fixture_path, load_regime, load_sheet, parse_unit, sheet_to_csv
from .units import Dimension, Quantity, Unit, normalize
from .valuation import (
    ExternalCostSchedule,
    IcaParams,
    WaterFlows,
    agricultural_external_cost_rate,
    imputed_abatement_cost,
    income_capitalization,
    market_value,
    replacement_cost,
    water_closing_stock,
)
