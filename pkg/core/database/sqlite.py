"""
SQLite run registry: one row per harness run
"""
from datetime import datetime
from functools import lru_cache
from pathlib import Path
from typing import List, Optional
import logging

from pydantic import BaseModel, ConfigDict, Field
from sqlalchemy import Column, DateTime, Float, Integer, String, create_engine
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import Session, declarative_base, sessionmaker

from core.config import settings

logger = logging.getLogger(__name__)

Base = declarative_base()


class RunORM(Base):
    """Simulation run ORM model"""
    __tablename__ = "simulation_runs"

    id = Column(Integer, primary_key=True, index=True)
    command = Column(String(50), nullable=False, index=True)
    integrator = Column(String(20), index=True)
    n_u = Column(Integer)
    n_s = Column(Integer)
    tau = Column(Float)
    duration = Column(Float)
    outcome = Column(String(20), nullable=False)
    unstable_step = Column(Integer)
    wall_seconds = Column(Float)
    force_evals = Column(Integer)
    max_rel_drift = Column(Float)
    created_at = Column(DateTime, default=datetime.utcnow)


class RunRecord(BaseModel):
    """Run registry entry"""
    model_config = ConfigDict(from_attributes=True)

    id: Optional[int] = None
    command: str = Field(..., description="CLI command or pipeline name")
    integrator: Optional[str] = Field(None, description="Stepper kind")
    n_u: Optional[int] = None
    n_s: Optional[int] = None
    tau: Optional[float] = None
    duration: Optional[float] = None
    outcome: str = Field("completed", description="completed or unstable")
    unstable_step: Optional[int] = None
    wall_seconds: Optional[float] = None
    force_evals: Optional[int] = None
    max_rel_drift: Optional[float] = None
    created_at: Optional[datetime] = None


class RunRegistry:
    """SQLite-backed record of harness runs"""

    def __init__(self, database_url: Optional[str] = None):
        database_url = database_url or settings.database_url
        if database_url.startswith("sqlite:///") and ":memory:" not in database_url:
            Path(database_url[len("sqlite:///"):]).parent.mkdir(parents=True, exist_ok=True)

        self.engine = create_engine(
            database_url,
            echo=settings.debug,
            connect_args={"check_same_thread": False}  # SQLite specific
        )
        self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)

    def create_tables(self):
        """Create all tables"""
        try:
            Base.metadata.create_all(bind=self.engine)
            logger.info("Run registry tables ready")
        except SQLAlchemyError as e:
            logger.error(f"Error creating tables: {e}")
            raise

    def get_session(self) -> Session:
        return self.SessionLocal()

    def record_run(self, record: RunRecord) -> RunRecord:
        """Insert one run"""
        with self.get_session() as session:
            try:
                db_run = RunORM(**record.model_dump(exclude={"id", "created_at"}))
                session.add(db_run)
                session.commit()
                session.refresh(db_run)
                return RunRecord.model_validate(db_run)
            except SQLAlchemyError as e:
                session.rollback()
                logger.error(f"Error recording run: {e}")
                raise

    def list_runs(self, command: Optional[str] = None, limit: int = 50) -> List[RunRecord]:
        """Most recent runs first"""
        with self.get_session() as session:
            try:
                query = session.query(RunORM)
                if command:
                    query = query.filter(RunORM.command == command)
                runs = query.order_by(RunORM.id.desc()).limit(limit).all()
                return [RunRecord.model_validate(run) for run in runs]
            except SQLAlchemyError as e:
                logger.error(f"Error listing runs: {e}")
                raise


@lru_cache(maxsize=None)
def get_run_registry(database_url: Optional[str] = None) -> RunRegistry:
    """Shared registry per database URL, tables created on first use"""
    registry = RunRegistry(database_url)
    registry.create_tables()
    return registry


def run_record(command: str, config, trajectory, max_rel_drift: Optional[float] = None) -> RunRecord:
    """Registry entry for one SimulationConfig / Trajectory pair"""
    return RunRecord(
        command=command,
        integrator=config.step.integrator_kind.value,
        n_u=config.n_u,
        n_s=config.n_s,
        tau=config.step.tau,
        duration=config.duration,
        outcome=trajectory.outcome.status,
        unstable_step=trajectory.outcome.step,
        wall_seconds=trajectory.wall_seconds,
        force_evals=trajectory.force_evals,
        max_rel_drift=max_rel_drift,
    )
